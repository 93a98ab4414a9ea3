#include <doctest.h>

#include <random>

#include "latticeroot/errors.hpp"
#include "latticeroot/exact.hpp"
#include "latticeroot/plumbing.hpp"
#include "support.hpp"

using namespace latticeroot;
using namespace testing_support;

namespace {

// Laplace expansion: independent of the Bareiss and LDL code paths.
Integer laplace_det(const std::vector<std::int64_t>& m, std::size_t n) {
  if (n == 1) return Integer(static_cast<long>(m[0]));
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c] == 0) continue;
    std::vector<std::int64_t> minor;
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) minor.push_back(m[i * n + j]);
      }
    }
    const Integer sub = laplace_det(minor, n - 1) * static_cast<long>(m[c]);
    total += (c % 2 == 0) ? sub : Integer(-sub);
  }
  return total;
}

// Sylvester's criterion on the leading principal minors of -M.
bool sylvester_negative_definite(const IntersectionForm& f) {
  const std::size_t n = f.size();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::int64_t> sub;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) sub.push_back(-f(i, j));
    }
    if (laplace_det(sub, k) <= 0) return false;
  }
  return true;
}

double cf_value(const std::vector<std::int64_t>& c, std::size_t i = 0) {
  if (i + 1 == c.size()) return static_cast<double>(c[i]);
  return static_cast<double>(c[i]) - 1.0 / cf_value(c, i + 1);
}

}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(make_rational(-3, 6)) == "-1/2");
  CHECK(to_string(make_rational(8, 4)) == "2");
  CHECK(parse_rational("-7/14") == make_rational(-1, 2));
  CHECK(floor_of(make_rational(-1, 2)) == -1);
  CHECK(ceil_of(make_rational(-1, 2)) == 0);
  CHECK(isqrt(99) == 9);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(ceil_div(-7, 2) == -3);
}

TEST_CASE("determinant and inverse against independent oracles") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> d(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    std::vector<std::int64_t> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) m[i * n + j] = m[j * n + i] = d(rng);
    }
    std::vector<Integer> rows(m.begin(), m.end());
    const Integer oracle = laplace_det(m, n);
    CHECK(determinant(rows, n) == oracle);
    IntersectionForm f(n, m);
    CHECK(f.inertia().determinant == oracle);
    CHECK(f.is_negative_definite() == sylvester_negative_definite(f));
    const Inertia in = f.inertia();
    CHECK(in.negative + in.zero + in.positive == static_cast<int>(n));
    CHECK((in.zero > 0) == (oracle == 0));
    if (oracle != 0) {
      const RationalMatrix inv = f.inverse();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Rational s = 0;
          for (std::size_t k = 0; k < n; ++k) s += static_cast<long>(f(i, k)) * inv(k, j);
          CHECK(s == (i == j ? 1 : 0));
        }
      }
    } else {
      CHECK_THROWS_AS(f.inverse(), NotDefinite);
    }
  }
}

TEST_CASE("intersection form of small graphs") {
  IntersectionForm one(single_vertex(-1));
  CHECK(one.size() == 1);
  CHECK(one(0, 0) == -1);

  IntersectionForm two(PlumbingGraph({{0, -2}, {1, -2}}, {{0, 1}}));
  CHECK(two.entries() == std::vector<std::int64_t>{-2, 1, 1, -2});

  IntersectionForm f3(figure3_graph());
  int ones = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      if (i != j && f3(i, j) == 1) ++ones;
    }
  }
  CHECK(ones == 12);
  CHECK(f3(0, 0) == -13);
  CHECK(f3(1, 1) == -1);
  CHECK(f3(5, 5) == -3);
}

TEST_CASE("malformed graphs are rejected with their reason") {
  using R = MalformedGraph::Reason;
  auto reason = [](auto&& make) {
    try {
      make();
    } catch (const MalformedGraph& e) {
      return e.reason();
    }
    FAIL("no MalformedGraph thrown");
    return R::empty;
  };
  CHECK(reason([] { PlumbingGraph({}, {}); }) == R::empty);
  CHECK(reason([] { PlumbingGraph({{0, -2}, {0, -2}}, {}); }) == R::duplicate_id);
  CHECK(reason([] { PlumbingGraph({{0, -2}}, {{0, 5}}); }) == R::unknown_vertex);
  CHECK(reason([] { PlumbingGraph({{0, -2}}, {{0, 0}}); }) == R::self_loop);
  CHECK(reason([] { PlumbingGraph({{0, -2}, {1, -2}}, {{0, 1}, {1, 0}}); }) == R::multi_edge);
  CHECK(reason([] { PlumbingGraph({{0, -2}, {1, -2}, {2, -2}}, {{0, 1}, {1, 2}, {2, 0}}); }) == R::cycle);
  CHECK(reason([] { PlumbingGraph({{0, -2}, {1, -2}}, {}); }) == R::disconnected);
}

TEST_CASE("validation reports") {
  const ValidationReport e8 = validate(e8_graph());
  CHECK(e8.is_negative_definite);
  CHECK(e8.bad_vertex_ids == std::vector<std::int64_t>{4});
  CHECK(e8.signature == -8);
  CHECK(abs(e8.determinant) == 1);

  const ValidationReport f3 = validate(figure3_graph());
  CHECK(f3.is_negative_definite);
  CHECK(f3.bad_vertex_ids == std::vector<std::int64_t>{1, 2});
  CHECK(f3.signature == -7);
  CHECK(abs(f3.determinant) == 1);

  CHECK_FALSE(validate(single_vertex(1)).is_negative_definite);
}

TEST_CASE("validation invariants on random trees") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> w(-4, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 7;
    std::vector<Vertex> vs;
    std::vector<std::pair<std::int64_t, std::int64_t>> es;
    for (std::size_t i = 0; i < n; ++i) {
      vs.push_back({static_cast<std::int64_t>(i), w(rng)});
      if (i) es.emplace_back(static_cast<std::int64_t>(rng() % i), static_cast<std::int64_t>(i));
    }
    const PlumbingGraph g(vs, es);
    const ValidationReport r = validate(g);
    const Inertia in = IntersectionForm(g).inertia();
    CHECK(r.signature == in.positive - in.negative);
    if (r.is_negative_definite) {
      CHECK(r.signature == -static_cast<int>(n));
      CHECK(sgn(r.determinant) == (n % 2 == 0 ? 1 : -1));
    }
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(g.is_bad(v) == (g.weight(v) > -static_cast<std::int64_t>(g.degree(v))));
    }
  }
}

TEST_CASE("graph JSON round trip") {
  const PlumbingGraph g = figure3_graph();
  const PlumbingGraph h = PlumbingGraph::from_json(g.to_json());
  CHECK(h.to_json() == g.to_json());
  CHECK_THROWS_AS(PlumbingGraph::from_json(nlohmann::json::parse(R"({"edges":[]})")), InvalidInput);
}

TEST_CASE("negative continued fractions") {
  CHECK(negative_continued_fraction(2, 1) == std::vector<std::int64_t>{2});
  CHECK(negative_continued_fraction(7, 3) == std::vector<std::int64_t>{3, 2, 2});
  for (std::int64_t a = 2; a < 40; ++a) {
    for (std::int64_t w = 1; w < a; ++w) {
      if (std::gcd(a, w) != 1) {
        CHECK_THROWS_AS(negative_continued_fraction(a, w), InvalidSeifertData);
        continue;
      }
      const auto c = negative_continued_fraction(a, w);
      for (auto x : c) CHECK(x >= 2);
      CHECK(cf_value(c) == doctest::Approx(static_cast<double>(a) / static_cast<double>(w)));
    }
  }
  CHECK_THROWS_AS(negative_continued_fraction(5, 5), InvalidSeifertData);
}

TEST_CASE("Seifert and Brieskorn plumbings") {
  const PlumbingGraph single = from_seifert(SeifertData{1, {{2, 1}}});
  CHECK(single.size() == 2);
  CHECK(single.weight(1) == -2);

  const PlumbingGraph s235 = from_seifert(brieskorn(2, 3, 5));
  CHECK(s235.size() == 8);
  const ValidationReport r = validate(s235);
  CHECK(r.is_negative_definite);
  CHECK(abs(r.determinant) == 1);
  CHECK(r.bad_vertex_ids == std::vector<std::int64_t>{0});

  for (auto [p, q, s] : {std::array<int, 3>{2, 7, 15}, {3, 5, 7}, {2, 3, 7}, {2, 5, 7}}) {
    const PlumbingGraph g = from_seifert(brieskorn(p, q, s));
    const ValidationReport v = validate(g);
    CHECK(v.is_negative_definite);
    CHECK(abs(v.determinant) == 1);
    CHECK(v.bad_vertex_ids.size() <= 1);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.weight(i) <= -2);
  }
  CHECK(validate(from_seifert(brieskorn(2, 7, 15))).bad_vertex_ids == std::vector<std::int64_t>{0});
  CHECK_THROWS_AS(brieskorn(2, 4, 5), InvalidSeifertData);
}

TEST_CASE("removing a leaf keeps badness of non-adjacent vertices") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const PlumbingGraph g = random_tree(rng, 7, 7);
    if (g.size() < 3) continue;
    std::size_t leaf = g.size();
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (g.degree(v) == 1) leaf = v;
    }
    std::vector<Vertex> vs;
    std::vector<std::pair<std::int64_t, std::int64_t>> es;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (v != leaf) vs.push_back(g.vertices()[v]);
    }
    for (auto [a, b] : g.edges()) {
      if (a != leaf && b != leaf) es.emplace_back(g.id(a), g.id(b));
    }
    const PlumbingGraph h(vs, es);
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (v == leaf || g.adjacent(v, leaf)) continue;
      CHECK(g.is_bad(v) == h.is_bad(h.index_of(g.id(v))));
    }
  }
}
