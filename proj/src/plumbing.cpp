#include "latticeroot/plumbing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "latticeroot/errors.hpp"

namespace latticeroot {

namespace {

std::int64_t json_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw InvalidInput(std::string("expected an integer for ") + what);
  }
  return j.get<std::int64_t>();
}

}  // namespace

PlumbingGraph::PlumbingGraph(
    std::vector<Vertex> vertices,
    std::vector<std::pair<std::int64_t, std::int64_t>> edges)
    : vertices_(std::move(vertices)) {
  using Reason = MalformedGraph::Reason;
  if (vertices_.empty()) throw MalformedGraph(Reason::empty, "graph has no vertices");
  std::map<std::int64_t, std::size_t> index;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index.emplace(vertices_[i].id, i).second) {
      throw MalformedGraph(Reason::duplicate_id,
                           "duplicate vertex id " + std::to_string(vertices_[i].id));
    }
  }
  adjacency_.resize(vertices_.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [a, b] : edges) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw MalformedGraph(Reason::unknown_vertex,
                           "edge references unknown vertex " +
                               std::to_string(ia == index.end() ? a : b));
    }
    if (a == b) {
      throw MalformedGraph(Reason::self_loop, "self-loop at vertex " + std::to_string(a));
    }
    auto key = std::minmax(ia->second, ib->second);
    if (!seen.insert(key).second) {
      throw MalformedGraph(Reason::multi_edge, "repeated edge " + std::to_string(a) +
                                                   "-" + std::to_string(b));
    }
    edges_.push_back(key);
    adjacency_[key.first].push_back(key.second);
    adjacency_[key.second].push_back(key.first);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  if (edges_.size() >= vertices_.size()) {
    throw MalformedGraph(Reason::cycle, "graph contains a cycle");
  }
  std::vector<char> visited(vertices_.size(), 0);
  std::vector<std::size_t> stack{0};
  visited[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : adjacency_[v]) {
      if (!visited[u]) {
        visited[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  if (reached != vertices_.size()) {
    // With fewer than s edges a disconnected graph may still hide a cycle.
    if (edges_.size() + 1 < vertices_.size()) {
      std::vector<std::size_t> parent(vertices_.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (const auto& [u, v] : edges_) {
        std::size_t ru = find(u), rv = find(v);
        if (ru == rv) throw MalformedGraph(Reason::cycle, "graph contains a cycle");
        parent[ru] = rv;
      }
    } else {
      throw MalformedGraph(Reason::cycle, "graph contains a cycle");
    }
    throw MalformedGraph(Reason::disconnected, "graph is disconnected");
  }
}

PlumbingGraph PlumbingGraph::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw InvalidInput("graph JSON needs a \"vertices\" array");
  }
  std::vector<Vertex> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v.contains("weight")) {
      throw InvalidInput("each vertex needs \"id\" and \"weight\"");
    }
    vertices.push_back({json_int(v["id"], "id"), json_int(v["weight"], "weight")});
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw InvalidInput("\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) {
        throw InvalidInput("each edge must be a pair of ids");
      }
      edges.emplace_back(json_int(e[0], "edge endpoint"), json_int(e[1], "edge endpoint"));
    }
  }
  return PlumbingGraph(std::move(vertices), std::move(edges));
}

nlohmann::json PlumbingGraph::to_json() const {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : vertices_) j["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : edges_) j["edges"].push_back({id(a), id(b)});
  return j;
}

std::size_t PlumbingGraph::index_of(std::int64_t vid) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id == vid) return i;
  }
  throw InvalidInput("no vertex with id " + std::to_string(vid));
}

bool PlumbingGraph::adjacent(std::size_t u, std::size_t v) const {
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<std::size_t> PlumbingGraph::bad_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) {
    if (is_bad(v)) out.push_back(v);
  }
  return out;
}

IntersectionForm::IntersectionForm(const PlumbingGraph& graph)
    : n_(graph.size()), m_(n_ * n_, 0) {
  for (std::size_t v = 0; v < n_; ++v) m_[v * n_ + v] = graph.weight(v);
  for (const auto& [a, b] : graph.edges()) {
    m_[a * n_ + b] = 1;
    m_[b * n_ + a] = 1;
  }
}

IntersectionForm::IntersectionForm(std::size_t n, std::vector<std::int64_t> entries)
    : n_(n), m_(std::move(entries)) {
  if (m_.size() != n_ * n_) throw InvalidInput("matrix has the wrong number of entries");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (m_[i * n_ + j] != m_[j * n_ + i]) throw InvalidInput("matrix is not symmetric");
    }
  }
}

Integer IntersectionForm::determinant() const {
  std::vector<Integer> rows(m_.size());
  for (std::size_t i = 0; i < m_.size(); ++i) rows[i] = Integer(static_cast<long>(m_[i]));
  return latticeroot::determinant(rows, n_);
}

RationalMatrix IntersectionForm::rational() const {
  RationalMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) r(i, j) = Rational(static_cast<long>((*this)(i, j)));
  }
  return r;
}

Inertia IntersectionForm::inertia() const { return symmetric_inertia(rational()); }

bool IntersectionForm::is_negative_definite() const {
  return inertia().negative == static_cast<int>(n_);
}

RationalMatrix IntersectionForm::inverse() const { return latticeroot::inverse(rational()); }

nlohmann::json ValidationReport::to_json() const {
  return {{"is_tree", is_tree},
          {"is_negative_definite", is_negative_definite},
          {"bad_vertex_ids", bad_vertex_ids},
          {"signature", signature},
          {"determinant", determinant.get_str()}};
}

ValidationReport validate(const PlumbingGraph& graph) {
  IntersectionForm form(graph);
  Inertia in = form.inertia();
  ValidationReport r;
  r.is_tree = true;  // enforced by PlumbingGraph construction
  r.is_negative_definite = in.negative == static_cast<int>(graph.size());
  r.signature = in.signature();
  r.determinant = form.determinant();
  if (r.determinant != in.determinant) {
    throw InternalMismatch("Bareiss and LDL determinants disagree");
  }
  for (std::size_t v : graph.bad_vertices()) r.bad_vertex_ids.push_back(graph.id(v));
  return r;
}

SeifertData SeifertData::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("b") || !j.contains("arms") || !j["arms"].is_array()) {
    throw InvalidInput("Seifert JSON needs \"b\" and an \"arms\" array");
  }
  SeifertData d;
  d.b = json_int(j["b"], "b");
  for (const auto& a : j["arms"]) {
    if (!a.is_array() || a.size() != 2) throw InvalidInput("each arm must be [alpha, omega]");
    d.arms.push_back({json_int(a[0], "alpha"), json_int(a[1], "omega")});
  }
  return d;
}

nlohmann::json SeifertData::to_json() const {
  nlohmann::json arms = nlohmann::json::array();
  for (const auto& a : this->arms) arms.push_back({a.alpha, a.omega});
  return {{"b", b}, {"arms", arms}};
}

std::vector<std::int64_t> negative_continued_fraction(std::int64_t a, std::int64_t w) {
  if (w <= 0 || a <= w) {
    throw InvalidSeifertData("need 0 < omega < alpha, got " + std::to_string(a) + "/" +
                             std::to_string(w));
  }
  if (std::gcd(a, w) != 1) {
    throw InvalidSeifertData("alpha and omega must be coprime, got " + std::to_string(a) +
                             "/" + std::to_string(w));
  }
  std::vector<std::int64_t> out;
  while (w != 0) {
    std::int64_t c = (a + w - 1) / w;
    std::int64_t r = c * w - a;
    out.push_back(c);
    a = w;
    w = r;
  }
  return out;
}

PlumbingGraph from_seifert(const SeifertData& data) {
  std::vector<Vertex> vertices{{0, -data.b}};
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::int64_t next = 1;
  for (const auto& arm : data.arms) {
    if (arm.alpha < 2) {
      throw InvalidSeifertData("alpha must be at least 2, got " + std::to_string(arm.alpha));
    }
    std::int64_t prev = 0;
    for (std::int64_t c : negative_continued_fraction(arm.alpha, arm.omega)) {
      vertices.push_back({next, -c});
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return PlumbingGraph(std::move(vertices), std::move(edges));
}

SeifertData brieskorn(std::int64_t p, std::int64_t q, std::int64_t r) {
  const std::int64_t alphas[3] = {p, q, r};
  for (auto a : alphas) {
    if (a < 2) throw InvalidSeifertData("Brieskorn exponents must be at least 2");
  }
  if (std::gcd(p, q) != 1 || std::gcd(p, r) != 1 || std::gcd(q, r) != 1) {
    throw InvalidSeifertData("Brieskorn exponents must be pairwise coprime");
  }
  const Integer prod = Integer(static_cast<long>(p)) * q * r;
  SeifertData d;
  Integer sum = 0;
  for (auto a : alphas) {
    Integer cofactor = prod / a;
    // omega * cofactor == -1 (mod a)
    Integer inv;
    Integer mod(static_cast<long>(a));
    mpz_invert(inv.get_mpz_t(), cofactor.get_mpz_t(), mod.get_mpz_t());
    Integer omega = (mod - inv) % mod;
    if (omega == 0) omega = mod;  // unreachable for a >= 2 and coprime data
    d.arms.push_back({a, omega.get_si()});
    sum += omega * cofactor;
  }
  // sum - b * prod == -1
  Integer b = (sum + 1) / prod;
  if (b * prod != sum + 1) throw InternalMismatch("Brieskorn Seifert solve failed");
  d.b = b.get_si();
  return d;
}

}  // namespace latticeroot
