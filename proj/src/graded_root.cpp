#include "latticeroot/graded_root.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "latticeroot/errors.hpp"

namespace latticeroot {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Permute the lattice so that vertex v0 comes first.
WeightedLattice move_to_front(const WeightedLattice& lat, std::size_t v0) {
  const std::size_t s = lat.dim();
  std::vector<std::size_t> order{v0};
  for (std::size_t i = 0; i < s; ++i) {
    if (i != v0) order.push_back(i);
  }
  std::vector<std::int64_t> m(s * s);
  std::vector<std::int64_t> ell(s);
  for (std::size_t i = 0; i < s; ++i) {
    ell[i] = lat.ell()[order[i]];
    for (std::size_t j = 0; j < s; ++j) m[i * s + j] = lat.form()(order[i], order[j]);
  }
  WeightedLattice out(IntersectionForm(s, std::move(m)), std::move(ell));
  out.set_budget(lat.budget());
  return out;
}

}  // namespace

std::vector<GradedRoot::Bar> GradedRoot::bars() const {
  std::vector<Bar> out;
  // birth and tie-break key of the elder branch through each node
  std::vector<std::vector<std::pair<std::int64_t, std::size_t>>> key(levels.size());
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const std::int64_t n = n_min + static_cast<std::int64_t>(l);
    key[l].assign(levels[l].size(), {n, 0});
    std::vector<std::vector<std::size_t>> children(levels[l].size());
    if (l > 0) {
      for (std::size_t c = 0; c < levels[l - 1].size(); ++c) {
        children[static_cast<std::size_t>(levels[l - 1][c].parent)].push_back(c);
      }
    }
    for (std::size_t v = 0; v < levels[l].size(); ++v) {
      if (children[v].empty()) {
        key[l][v] = {n, levels[l][v].min_point};
        continue;
      }
      std::size_t elder = children[v].front();
      for (std::size_t c : children[v]) {
        if (key[l - 1][c] < key[l - 1][elder]) elder = c;
      }
      key[l][v] = key[l - 1][elder];
      for (std::size_t c : children[v]) {
        if (c != elder) out.push_back(Bar{key[l - 1][c].first, n});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Bar& a, const Bar& b) {
    return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
  });
  return out;
}

std::string GradedRoot::canonical_form() const {
  if (levels.empty()) return "empty";
  std::vector<std::vector<std::string>> enc(levels.size());
  for (std::size_t l = 0; l < levels.size(); ++l) {
    std::vector<std::vector<std::string>> kids(levels[l].size());
    if (l > 0) {
      for (std::size_t c = 0; c < levels[l - 1].size(); ++c) {
        kids[static_cast<std::size_t>(levels[l - 1][c].parent)].push_back(enc[l - 1][c]);
      }
    }
    enc[l].resize(levels[l].size());
    for (std::size_t v = 0; v < levels[l].size(); ++v) {
      std::sort(kids[v].begin(), kids[v].end());
      std::string s = "(";
      for (const auto& k : kids[v]) s += k;
      enc[l][v] = s + ")";
    }
  }
  std::vector<std::string> top = enc.back();
  std::sort(top.begin(), top.end());
  std::ostringstream os;
  os << n_min << ":" << n_stab << ":";
  for (const auto& t : top) os << t;
  return os.str();
}

std::string GradedRoot::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n  node [shape=circle, label=\"\"];\n";
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const std::int64_t n = n_min + static_cast<std::int64_t>(l);
    os << "  { rank=same;";
    for (std::size_t v = 0; v < levels[l].size(); ++v) os << " n" << l << "_" << v << ";";
    os << " }\n";
    for (std::size_t v = 0; v < levels[l].size(); ++v) {
      os << "  n" << l << "_" << v << " [xlabel=\"" << 2 * n << "\"];\n";
      if (levels[l][v].parent >= 0) {
        os << "  n" << l << "_" << v << " -> n" << l + 1 << "_" << levels[l][v].parent << ";\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

nlohmann::json GradedRoot::to_json() const {
  nlohmann::json lv = nlohmann::json::array();
  for (std::size_t l = 0; l < levels.size(); ++l) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : levels[l]) nodes.push_back(node.parent);
    lv.push_back({{"level", n_min + static_cast<std::int64_t>(l)}, {"parents", nodes}});
  }
  return {{"n_min", n_min}, {"n_stab", n_stab}, {"levels", lv}};
}

GradedRoot root_from_sequence(const std::vector<std::int64_t>& values, std::int64_t n_min,
                              std::int64_t n_stab) {
  GradedRoot root;
  root.n_min = n_min;
  root.n_stab = n_stab;
  // Components of {i : values[i] <= n} are maximal runs.
  auto runs = [&](std::int64_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < values.size();) {
      if (values[i] > n) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < values.size() && values[j] <= n) ++j;
      out.emplace_back(i, j);
      i = j;
    }
    return out;
  };
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> all;
  for (std::int64_t n = n_min; n <= n_stab; ++n) all.push_back(runs(n));
  for (std::size_t l = 0; l < all.size(); ++l) {
    std::vector<RootNode> nodes;
    for (const auto& [a, b] : all[l]) {
      // Represent a run by its position of minimal value, leftmost.
      std::size_t best = a;
      for (std::size_t i = a; i < b; ++i) {
        if (values[i] < values[best]) best = i;
      }
      RootNode node;
      node.min_point = best;
      if (l + 1 < all.size()) {
        const auto& up = all[l + 1];
        for (std::size_t k = 0; k < up.size(); ++k) {
          if (up[k].first <= a && b <= up[k].second) node.parent = static_cast<std::int64_t>(k);
        }
      }
      nodes.push_back(node);
    }
    root.levels.push_back(std::move(nodes));
  }
  return root;
}

LatticeAnalysis::LatticeAnalysis(const WeightedLattice& lat, const AnalysisOptions& options)
    : lat_(lat), max_q_(std::min(options.max_q, lat.dim())) {
  const std::int64_t n_min = lat_.minimum_level();
  auto stable = [&](std::int64_t n) {
    if (betti_.at(n, 0) != 1) return false;
    for (std::size_t q = 1; q <= max_q_; ++q) {
      if (betti_.at(n, q) != 0) return false;
    }
    return true;
  };
  std::optional<std::int64_t> found;
  for (std::int64_t top = n_min + 1;; ++top) {
    if (options.max_level && top > *options.max_level + 1) break;
    try {
      points_ = std::make_unique<PointSet>(collect_points(lat_, top));
      complex_ = std::make_unique<CubicalComplex>(*points_, max_q_);
      betti_ = persistent_betti(*complex_, max_q_, n_min, top);
    } catch (const CapacityExceeded& e) {
      throw StabilizationNotReached(std::string("no stabilization before the point budget ran out: ") +
                                    e.what());
    }
    n_top_ = top;
    if (stable(top - 1) && stable(top)) {
      found = top - 1;
      break;
    }
  }
  if (!found) {
    // The explicit level cap overrides the two-level confirmation as long
    // as the capped slice is connected.
    const std::int64_t cap = *options.max_level;
    if (cap < n_min || betti_.at(cap, 0) != 1) {
      throw StabilizationNotReached("sublevel set at level " + std::to_string(cap) +
                                    " is not connected");
    }
    found = cap;
  }
  root_.n_min = n_min;
  root_.n_stab = *found;
  build_root();
}

std::size_t LatticeAnalysis::prefix(std::int64_t n) const {
  std::size_t lo = 0, hi = points_->size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (points_->weight(mid) <= n) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::uint32_t LatticeAnalysis::component(std::int64_t n, std::size_t p) const {
  return labels_[static_cast<std::size_t>(n - root_.n_min)][p];
}

void LatticeAnalysis::build_root() {
  const std::size_t s = lat_.dim();
  UnionFind uf(points_->size());
  labels_.clear();
  std::size_t done = 0;
  for (std::int64_t n = root_.n_min; n <= n_top_; ++n) {
    const std::size_t end = prefix(n);
    for (std::size_t p = done; p < end; ++p) {
      for (std::size_t j = 0; j < s; ++j) {
        for (int sign : {+1, -1}) {
          std::int64_t q = complex_->step(static_cast<std::uint32_t>(p), j, sign);
          if (q >= 0 && static_cast<std::size_t>(q) < end) {
            uf.unite(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q));
          }
        }
      }
    }
    done = end;
    std::vector<std::uint32_t> label(end);
    std::map<std::uint32_t, std::uint32_t> ids;
    for (std::size_t p = 0; p < end; ++p) {
      auto [it, fresh] = ids.emplace(uf.find(static_cast<std::uint32_t>(p)),
                                     static_cast<std::uint32_t>(ids.size()));
      label[p] = it->second;
      (void)fresh;
    }
    labels_.push_back(std::move(label));
  }
  root_.levels.clear();
  for (std::int64_t n = root_.n_min; n <= root_.n_stab; ++n) {
    const auto& lab = labels_[static_cast<std::size_t>(n - root_.n_min)];
    std::vector<RootNode> nodes;
    for (std::size_t p = 0; p < lab.size(); ++p) {
      if (lab[p] == nodes.size()) nodes.push_back(RootNode{p, -1});
    }
    if (n < root_.n_stab) {
      const auto& next = labels_[static_cast<std::size_t>(n + 1 - root_.n_min)];
      for (auto& node : nodes) node.parent = next[node.min_point];
    }
    if (nodes.size() != betti_.at(n, 0)) {
      throw InternalMismatch("component sweep and persistence disagree on h^0");
    }
    root_.levels.push_back(std::move(nodes));
  }
}

std::size_t tau_vertex(const PlumbingGraph& graph) {
  auto bad = graph.bad_vertices();
  if (bad.size() > 1) throw TooManyBadVertices("the fibre-minimum path needs at most one bad vertex");
  if (bad.size() == 1) return bad.front();
  std::size_t best = 0;
  for (std::size_t v = 1; v < graph.size(); ++v) {
    if (graph.degree(v) > graph.degree(best)) best = v;
  }
  return best;
}

TauProfile tau_profile(const WeightedLattice& lat, std::size_t v0, std::int64_t level) {
  WeightedLattice moved = move_to_front(lat, v0);
  TauProfile out;
  out.v0 = v0;
  out.certified_level = level;
  auto fibre_min = [&](std::int64_t i) -> std::optional<std::int64_t> {
    if (moved.fibre_lower_bound(i) > Rational(static_cast<long>(level))) return std::nullopt;
    std::int64_t n = to_int64(ceil_of(moved.fibre_lower_bound(i)));
    for (;; ++n) {
      bool hit = false;
      moved.enumerate(n, [&](const Coord*, std::int64_t) { hit = true; }, &i);
      if (hit) return n;
    }
  };
  // Centre of the fibre bounds: the real minimiser's v0 coordinate.
  std::int64_t centre = 0;
  {
    Rational best = moved.fibre_lower_bound(0);
    for (int dir : {+1, -1}) {
      for (std::int64_t i = dir;; i += dir) {
        Rational b = moved.fibre_lower_bound(i);
        if (b >= best) break;
        best = b;
        centre = i;
      }
    }
  }
  std::vector<std::int64_t> left, right;
  for (std::int64_t i = centre;; ++i) {
    auto v = fibre_min(i);
    if (!v) break;
    right.push_back(*v);
  }
  for (std::int64_t i = centre - 1;; --i) {
    auto v = fibre_min(i);
    if (!v) break;
    left.push_back(*v);
  }
  out.first = centre - static_cast<std::int64_t>(left.size());
  out.values.assign(left.rbegin(), left.rend());
  out.values.insert(out.values.end(), right.begin(), right.end());
  return out;
}

GradedRoot tau_root(const TauProfile& tau) {
  if (tau.values.empty()) throw StabilizationNotReached("empty fibre profile");
  const std::int64_t n_min = *std::min_element(tau.values.begin(), tau.values.end());
  auto single_run = [&](std::int64_t n) {
    std::size_t runs = 0;
    bool inside = false;
    for (auto v : tau.values) {
      bool in = v <= n;
      if (in && !inside) ++runs;
      inside = in;
    }
    return runs == 1;
  };
  for (std::int64_t n = n_min; n + 1 <= tau.certified_level; ++n) {
    if (single_run(n) && single_run(n + 1)) return root_from_sequence(tau.values, n_min, n);
  }
  throw StabilizationNotReached("fibre profile not stabilized by level " +
                                std::to_string(tau.certified_level));
}

GradedRoot fast_graded_root(const WeightedLattice& lat, std::size_t v0) {
  const std::int64_t n_min = lat.minimum_level();
  for (std::int64_t level = n_min + 1;; level += 1) {
    TauProfile tau = tau_profile(lat, v0, level);
    try {
      return tau_root(tau);
    } catch (const StabilizationNotReached&) {
      if (level > n_min + 4096) throw;
    }
  }
}

}  // namespace latticeroot
