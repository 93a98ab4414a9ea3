#include <doctest.h>

#include <random>

#include "latticeroot/errors.hpp"
#include "latticeroot/graded_root.hpp"
#include "latticeroot/spinc.hpp"
#include "latticeroot/symmetry.hpp"
#include "support.hpp"

using namespace latticeroot;
using namespace testing_support;

namespace {

struct Fixture {
  WeightedLattice lat;
  LatticeAnalysis an;
  SymmetryData sym;
  Rational sigma;
};

Fixture analyse(const PlumbingGraph& g, const CharVector* ell = nullptr, std::size_t max_q = 1) {
  const IntersectionForm f(g);
  CharVector l;
  if (ell) {
    l = *ell;
  } else {
    for (const auto& o : enumerate_orbits(f)) {
      if (o.self_conjugate) {
        l = o.representative;
        break;
      }
    }
  }
  WeightedLattice lat(f, l);
  LatticeAnalysis an(lat, AnalysisOptions{max_q, std::nullopt});
  SymmetryData sym = involution_on_slices(an);
  return Fixture{lat, std::move(an), std::move(sym), sigma_shift(l, f)};
}

}  // namespace

TEST_CASE("E8: J is negation and fixes the single point") {
  const Fixture fx = analyse(e8_graph());
  CHECK(fx.sym.kappa == std::vector<std::int64_t>(8, 0));
  CHECK(fx.sym.at(0).fixed == std::optional<std::uint32_t>(0));
  CHECK(fx.sym.r == 0);
  CHECK(fx.sym.rho == -2);
  CHECK(reflect(Point{1, 2, 3, 0, 0, 0, 0, -1}, fx.sym.kappa) == Point{-1, -2, -3, 0, 0, 0, 0, 1});
}

TEST_CASE("S(3,5,7): J swaps the two lowest components") {
  const Fixture fx = analyse(from_seifert(brieskorn(3, 5, 7)));
  CHECK_FALSE(fx.sym.at(0).fixed.has_value());
  CHECK(fx.sym.at(0).pairs.size() == 1);
  CHECK(fx.sym.at(1).fixed.has_value());
  CHECK(fx.sym.at(1).pairs.size() == 1);
  CHECK(fx.sym.r == 2);
  CHECK(fx.sym.centre_r == 2);
  CHECK(fx.sym.rho == 0);
  const DerivedModule d = derived_cohomology(fx.sym, fx.an.root());
  CHECK(d.single_tower);
  CHECK(d.ranks == std::vector<std::size_t>{0, 1, 1});
}

TEST_CASE("S(2,7,15): pairs at the bottom, tower from grading 4") {
  const Fixture fx = analyse(from_seifert(brieskorn(2, 7, 15)));
  CHECK(fx.sym.at(0).pairs.size() == 1);
  CHECK(fx.sym.at(1).pairs.size() == 2);
  CHECK_FALSE(fx.sym.at(1).fixed.has_value());
  CHECK(fx.sym.at(3).pairs.size() == 1);
  CHECK(fx.sym.r == 4);
  CHECK(fx.sym.rho == 4);
  CHECK(fx.sym.fixed_rank(1) == 0);
  CHECK(fx.sym.fixed_rank(2) == 1);
  CHECK(fx.sym.fixed_rank(100) == 1);
}

TEST_CASE("Figure 3: the loop at level 1 survives in the derived groups") {
  const Fixture fx = analyse(figure3_graph(), nullptr, 2);
  CHECK(fx.sym.r == 2);
  CHECK(fx.sym.centre_r == 4);
  const H1Symmetry h = h1_symmetry(fx.an, fx.sym.kappa, 1);
  CHECK(h.h1 == 1);
  CHECK(h.derived() == 1);
  CHECK(h1_symmetry(fx.an, fx.sym.kappa, 0).h1 == 0);

  const IntersectionForm f(figure3_graph());
  const CharVector k = canonical_class(f);
  const Fixture fk = analyse(figure3_graph(), &k);
  CHECK(fk.sigma == 2);
  CHECK(fk.sym.r + fk.sigma == fx.sym.r + fx.sigma);
}

TEST_CASE("non-self-conjugate orbits are refused") {
  const IntersectionForm f(single_vertex(-3));
  for (const auto& o : enumerate_orbits(f)) {
    if (o.self_conjugate) continue;
    LatticeAnalysis an(WeightedLattice(f, o.representative), AnalysisOptions{0, std::nullopt});
    CHECK_THROWS_AS(involution_on_slices(an), NotSelfConjugate);
  }
}

TEST_CASE("symmetry invariants on random trees") {
  std::mt19937_64 rng(51);
  int checked = 0;
  while (checked < 60) {
    const PlumbingGraph g = random_tree(rng, 6, 1);
    const IntersectionForm f(g);
    const auto orbits = enumerate_orbits(f);
    std::vector<CharVector> sc;
    for (const auto& o : orbits) {
      if (o.self_conjugate) sc.push_back(o.representative);
    }
    if (sc.empty()) continue;
    const CharVector ell = sc[rng() % sc.size()];
    WeightedLattice lat(f, ell);
    if (lat.predicted_count(lat.minimum_level() + 6) > 20000) continue;
    const Fixture fx = analyse(g, &ell);
    const PointSet& pts = fx.an.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point x = pts.point_vector(i);
      const Point jx = reflect(x, fx.sym.kappa);
      CHECK(fx.lat.weight(jx) == pts.weight(i));
      CHECK(reflect(jx, fx.sym.kappa) == x);
    }
    // At most one bad vertex: no H^1, so both ways of finding r agree.
    CHECK(fx.sym.r == fx.sym.centre_r);
    CHECK(fx.sym.r == scan_r(fx.sym));
    CHECK(fx.sym.r % 2 == 0);
    bool seen = false;
    for (const auto& l : fx.sym.levels) {
      if (seen) CHECK(l.fixed.has_value());
      seen = seen || l.fixed.has_value();
      std::size_t covered = l.fixed ? 1 : 0;
      covered += 2 * l.pairs.size();
      CHECK(covered == l.involution.size());
    }
    CHECK(derived_cohomology(fx.sym, fx.an.root()).single_tower);
    ++checked;
  }
}
