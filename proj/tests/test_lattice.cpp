#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "latticeroot/errors.hpp"
#include "latticeroot/graded_root.hpp"
#include "latticeroot/lattice.hpp"
#include "latticeroot/spinc.hpp"
#include "support.hpp"

using namespace latticeroot;
using namespace testing_support;

namespace {

std::set<std::vector<std::int64_t>> enumerated(const WeightedLattice& lat, std::int64_t n) {
  std::set<std::vector<std::int64_t>> out;
  lat.enumerate(n, [&](const Coord* x, std::int64_t w) {
    std::vector<std::int64_t> p(x, x + lat.dim());
    CHECK(w == brute_weight(lat.form(), lat.ell(), p));
    CHECK(w <= n);
    out.insert(p);
  });
  return out;
}

}  // namespace

TEST_CASE("enumeration examples") {
  WeightedLattice e8(IntersectionForm(e8_graph()), std::vector<std::int64_t>(8, 0));
  CHECK(enumerated(e8, 0).count(std::vector<std::int64_t>(8, 0)) == 1);
  CHECK(enumerated(e8, 0).size() == 1);
  CHECK(enumerated(e8, -1).empty());
  CHECK(box_points(e8.form(), e8.ell(), -1, 3).empty());
  CHECK(e8.minimum_level() == 0);

  WeightedLattice a1(IntersectionForm(single_vertex(-2)), {0});
  CHECK(enumerated(a1, 1) == std::set<std::vector<std::int64_t>>{{-1}, {0}, {1}});
}

TEST_CASE("ellipsoid enumeration agrees with a box scan") {
  std::mt19937_64 rng(21);
  int checked = 0;
  while (checked < 60) {
    const PlumbingGraph g = random_tree(rng, 5, 2);
    IntersectionForm f(g);
    for (const SpinCOrbit& o : enumerate_orbits(f)) {
      WeightedLattice lat(f, o.representative);
      const std::int64_t n = lat.minimum_level() + 2;
      const auto fast = enumerated(lat, n);
      // A box large enough to contain the ellipsoid, certified by checking the
      // next larger box gives the same set.
      std::int64_t radius = 2;
      auto box = box_points(f, o.representative, n, radius);
      while (true) {
        auto bigger = box_points(f, o.representative, n, radius + 2);
        if (bigger == box) break;
        box = std::move(bigger);
        radius += 2;
        if (radius > 12) break;
      }
      if (radius > 12 || std::pow(2 * radius + 5, f.size()) > 3e6) continue;
      CHECK(fast == box);
      ++checked;
      break;
    }
  }
}

TEST_CASE("collected points are ordered by weight then lexicographically") {
  const IntersectionForm f(from_seifert(brieskorn(2, 3, 7)));
  const auto orbits = enumerate_orbits(f);
  WeightedLattice l2(f, orbits[0].representative);
  const PointSet pts = collect_points(l2, l2.minimum_level() + 2);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const bool ordered = pts.weight(i - 1) < pts.weight(i) ||
                         (pts.weight(i - 1) == pts.weight(i) && pts.point_vector(i - 1) < pts.point_vector(i));
    CHECK(ordered);
    CHECK(pts.find(pts.point_vector(i)) == i);
  }
}

TEST_CASE("budget refusal") {
  WeightedLattice e8(IntersectionForm(e8_graph()), std::vector<std::int64_t>(8, 0));
  e8.set_budget(100);
  CHECK_THROWS_AS(e8.enumerate(3, [](const Coord*, std::int64_t) {}), CapacityExceeded);
  e8.set_budget(10000);
  std::size_t count = 0;
  e8.enumerate(1, [&](const Coord*, std::int64_t) { ++count; });
  CHECK(count == 241);  // the origin and the 240 roots
}

TEST_CASE("predicted count tracks the actual count") {
  WeightedLattice e8(IntersectionForm(e8_graph()), std::vector<std::int64_t>(8, 0));
  std::size_t count = 0;
  e8.enumerate(6, [&](const Coord*, std::int64_t) { ++count; });
  const double predicted = e8.predicted_count(6);
  CHECK(predicted > 0.3 * static_cast<double>(count));
  CHECK(predicted < 3.0 * static_cast<double>(count));
}

TEST_CASE("tau profile examples") {
  WeightedLattice e8(IntersectionForm(e8_graph()), std::vector<std::int64_t>(8, 0));
  const TauProfile t = tau_profile(e8, 0, 3);
  CHECK(t.values[static_cast<std::size_t>(0 - t.first)] == 0);

  WeightedLattice a1(IntersectionForm(single_vertex(-2)), {0});
  const TauProfile ta = tau_profile(a1, 0, 9);
  REQUIRE(ta.first <= 3);
  REQUIRE(3 - ta.first < static_cast<std::int64_t>(ta.values.size()));
  CHECK(ta.values[static_cast<std::size_t>(3 - ta.first)] == 9);
}

TEST_CASE("fibre lower bound never exceeds the fibre minimum") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const PlumbingGraph g = random_star(rng, 3, 2);
    IntersectionForm f(g);
    const auto orbits = enumerate_orbits(f);
    WeightedLattice lat(f, orbits[0].representative);
    const std::int64_t n = lat.minimum_level() + 3;
    std::map<std::int64_t, std::int64_t> fibre_min;
    lat.enumerate(n, [&](const Coord* x, std::int64_t w) {
      auto it = fibre_min.find(x[0]);
      if (it == fibre_min.end() || w < it->second) fibre_min[x[0]] = w;
    });
    for (auto [i, w] : fibre_min) CHECK(lat.fibre_lower_bound(i) <= w);
  }
}
