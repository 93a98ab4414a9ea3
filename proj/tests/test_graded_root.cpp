#include <doctest.h>

#include <random>
#include <set>

#include "latticeroot/graded_root.hpp"
#include "latticeroot/spinc.hpp"
#include "support.hpp"

using namespace latticeroot;
using namespace testing_support;

namespace {

LatticeAnalysis analyse(const PlumbingGraph& g, std::size_t max_q = 0) {
  const IntersectionForm f(g);
  WeightedLattice lat(f, enumerate_orbits(f)[0].representative);
  return LatticeAnalysis(lat, AnalysisOptions{max_q, std::nullopt});
}

// Components of S_n by union-find over lattice edges, independent of the
// cubical complex.
std::size_t components_oracle(const WeightedLattice& lat, std::int64_t n) {
  const PointSet pts = collect_points(lat, n);
  std::vector<std::size_t> parent(pts.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t count = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.dim(); ++j) {
      Point x = pts.point_vector(i);
      ++x[j];
      const std::size_t k = pts.find(x);
      if (k == PointSet::npos) continue;
      const std::size_t a = find(i), b = find(k);
      if (a != b) {
        parent[a] = b;
        --count;
      }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("graded roots of the examples") {
  const LatticeAnalysis e8 = analyse(e8_graph());
  CHECK(e8.n_min() == 0);
  CHECK(e8.n_stab() == 0);
  CHECK(e8.root().canonical_form() == "0:0:()");

  const LatticeAnalysis s357 = analyse(from_seifert(brieskorn(3, 5, 7)));
  CHECK(s357.root().components(0) == 2);
  CHECK(s357.root().components(1) == 3);
  CHECK(s357.root().components(2) == 1);
  CHECK(s357.root().canonical_form() == "0:2:((()())()())");

  const LatticeAnalysis s2715 = analyse(from_seifert(brieskorn(2, 7, 15)));
  CHECK(s2715.n_stab() == 4);
  CHECK(s2715.root().components(1) == 4);
  CHECK(s2715.root().components(2) == 1);

  // Figure 3 at its canonical representative has the same root as S(3,5,7).
  const LatticeAnalysis f3 = analyse(figure3_graph());
  CHECK(f3.root().canonical_form() == s357.root().canonical_form());
}

TEST_CASE("bars of the examples") {
  const auto bars = analyse(from_seifert(brieskorn(2, 7, 15))).root().bars();
  std::multiset<std::pair<std::int64_t, std::int64_t>> got;
  for (const auto& b : bars) got.insert({b.birth, b.death});
  CHECK(bars.size() == 5);
  CHECK(got.count({0, 2}) == 1);
  CHECK(got.count({1, 2}) == 2);
  CHECK(got.count({3, 4}) == 2);
}

TEST_CASE("component counts agree with a union-find oracle") {
  std::mt19937_64 rng(41);
  int checked = 0;
  while (checked < 50) {
    const PlumbingGraph g = random_tree(rng, 6, 2);
    const IntersectionForm f(g);
    const auto orbits = enumerate_orbits(f);
    WeightedLattice lat(f, orbits[rng() % orbits.size()].representative);
    if (lat.predicted_count(lat.minimum_level() + 6) > 20000) continue;
    LatticeAnalysis an(lat, AnalysisOptions{0, std::nullopt});
    const GradedRoot& root = an.root();
    for (std::int64_t n = root.n_min; n <= root.n_stab; ++n) {
      CHECK(root.components(n) == components_oracle(lat, n));
      if (n > root.n_min) {
        // Every component at n - 1 maps to a component at n.
        for (const RootNode& node : root.at(n - 1)) {
          CHECK(node.parent >= 0);
          CHECK(static_cast<std::size_t>(node.parent) < root.components(n));
        }
      }
    }
    CHECK(root.components(root.n_stab) == 1);
    CHECK(root.at(root.n_stab).front().parent == -1);
    ++checked;
  }
}

TEST_CASE("the fast path gives the same root on stars") {
  std::mt19937_64 rng(43);
  int checked = 0;
  while (checked < 50) {
    const PlumbingGraph g = random_star(rng, 4, 2);
    if (g.bad_vertices().size() > 1) continue;
    const IntersectionForm f(g);
    const auto orbits = enumerate_orbits(f);
    WeightedLattice lat(f, orbits[rng() % orbits.size()].representative);
    if (lat.predicted_count(lat.minimum_level() + 6) > 20000) continue;
    LatticeAnalysis an(lat, AnalysisOptions{0, std::nullopt});
    const GradedRoot fast = fast_graded_root(lat, tau_vertex(g));
    CHECK(fast.n_min == an.n_min());
    CHECK(fast.canonical_form() == an.root().canonical_form());
    ++checked;
  }
}

TEST_CASE("root from a sequence") {
  // Two local minima at 0 separated by a peak at 2.
  const GradedRoot r = root_from_sequence({3, 0, 2, 0, 3}, 0, 3);
  CHECK(r.components(0) == 2);
  CHECK(r.components(1) == 2);
  CHECK(r.components(2) == 1);
  CHECK(r.canonical_form() == "0:3:(((())(())))");
  CHECK(r.bars().size() == 1);
}
