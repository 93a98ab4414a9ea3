#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "latticeroot/errors.hpp"
#include "latticeroot/lattice.hpp"
#include "latticeroot/smith.hpp"
#include "latticeroot/spinc.hpp"
#include "support.hpp"

using namespace latticeroot;
using namespace testing_support;

namespace {

CharVector shifted(const CharVector& ell, const IntersectionForm& f, const std::vector<std::int64_t>& x) {
  CharVector out(ell);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) out[i] += 2 * f(i, j) * x[j];
  }
  return out;
}

}  // namespace

TEST_CASE("orbit enumeration examples") {
  const IntersectionForm e8(e8_graph());
  const auto o = enumerate_orbits(e8);
  REQUIRE(o.size() == 1);
  CHECK(o[0].self_conjugate);
  CHECK(o[0].representative == CharVector(8, 0));
  CHECK(o[0].sigma == -2);

  const IntersectionForm a1(single_vertex(-2));
  const auto oa = enumerate_orbits(a1);
  REQUIRE(oa.size() == 2);
  CHECK(oa[0].self_conjugate);
  CHECK(oa[1].self_conjugate);

  const auto of = enumerate_orbits(IntersectionForm(figure3_graph()));
  REQUIRE(of.size() == 1);
  CHECK(of[0].self_conjugate);

  CHECK_THROWS_AS(enumerate_orbits(IntersectionForm(single_vertex(1))), NotDefinite);
}

TEST_CASE("same-orbit test") {
  const IntersectionForm e8(e8_graph());
  const CharVector zero(8, 0);
  CHECK(is_same_orbit(zero, zero, e8));
  std::vector<std::int64_t> x(8, 0);
  x[0] = 1;
  CHECK(is_same_orbit(zero, shifted(zero, e8, x), e8));

  const IntersectionForm a1(single_vertex(-2));
  CHECK_FALSE(is_same_orbit({0}, {2}, a1));
  CHECK_THROWS_AS(is_same_orbit({1}, {0}, a1), NotCharacteristic);
}

TEST_CASE("k squared and sigma examples") {
  const IntersectionForm a1(single_vertex(-2));
  CHECK(k_square({0}, a1) == 0);
  CHECK(k_square({2}, a1) == -2);
  CHECK(sigma_shift({2}, a1) == make_rational(1, 4));
  CHECK(sigma_shift(CharVector(8, 0), IntersectionForm(e8_graph())) == -2);

  // The canonical class on Figure 3 is the vector with sigma = 2.
  const IntersectionForm f3(figure3_graph());
  CHECK(sigma_shift(canonical_class(f3), f3) == 2);
}

TEST_CASE("orbit count equals |det| and orbits are distinct and closed") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const PlumbingGraph g = random_tree(rng, 5, 2);
    const IntersectionForm f(g);
    const auto orbits = enumerate_orbits(f);
    CHECK(Integer(static_cast<unsigned long>(orbits.size())) == abs(f.determinant()));
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      CHECK(orbits[i].orbit_index == i);
      CharVector neg(orbits[i].representative);
      for (auto& v : neg) v = -v;
      CHECK(orbits[i].self_conjugate == is_same_orbit(orbits[i].representative, neg, f));
      for (std::size_t j = i + 1; j < orbits.size() && j < i + 4; ++j) {
        CHECK_FALSE(is_same_orbit(orbits[i].representative, orbits[j].representative, f));
      }
    }
  }
}

TEST_CASE("canonical representative is independent of the starting vector") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> d(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const PlumbingGraph g = random_tree(rng, 5, 1);
    const IntersectionForm f(g);
    for (const SpinCOrbit& o : enumerate_orbits(f)) {
      std::vector<std::int64_t> x(f.size());
      for (auto& v : x) v = d(rng);
      const CharVector moved = shifted(o.representative, f, x);
      CHECK(is_same_orbit(moved, o.representative, f));
      CHECK(canonical_representative(moved, f) == o.representative);
      // k^2 of the canonical representative is maximal in the orbit.
      CHECK(k_square(moved, f) <= o.k_square);
    }
  }
}

TEST_CASE("Smith normal form") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::int64_t> d(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    std::vector<Integer> m(n * n);
    for (auto& v : m) v = static_cast<long>(d(rng));
    const SmithForm s = smith_normal_form(m, n);
    auto mul = [n](const std::vector<Integer>& a, const std::vector<Integer>& b) {
      std::vector<Integer> c(n * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) c[i * n + j] += a[i * n + k] * b[k * n + j];
        }
      }
      return c;
    };
    const auto umv = mul(mul(s.u, m), s.v);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) CHECK(umv[i * n + j] == (i == j ? s.d[i] : Integer(0)));
    }
    const auto id = mul(s.u, s.u_inverse);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) CHECK(id[i * n + j] == (i == j ? 1 : 0));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(s.d[i] >= 0);
      if (s.d[i] != 0) CHECK(s.d[i + 1] % s.d[i] == 0);
    }
    CHECK(abs(determinant(m, n)) == std::accumulate(s.d.begin(), s.d.end(), Integer(1), std::multiplies<>()));
  }
}

TEST_CASE("Wu vectors") {
  const PlumbingGraph e8g = e8_graph();
  const auto e8o = enumerate_orbits(IntersectionForm(e8g));
  const WuData e8w = wu_vector(e8g, e8o[0]);
  CHECK(e8w.w == std::vector<std::uint8_t>(8, 0));
  CHECK(e8w.mubar == -1);

  const PlumbingGraph s2715 = from_seifert(brieskorn(2, 7, 15));
  CHECK(wu_vector(s2715, enumerate_orbits(IntersectionForm(s2715))[0]).mubar == 2);
  const PlumbingGraph s357 = from_seifert(brieskorn(3, 5, 7));
  CHECK(wu_vector(s357, enumerate_orbits(IntersectionForm(s357))[0]).mubar == 0);

  const IntersectionForm a1(single_vertex(-3));
  const auto a1o = enumerate_orbits(a1);
  for (const auto& o : a1o) {
    if (!o.self_conjugate) CHECK_THROWS_AS(wu_vector(single_vertex(-3), o), NotSelfConjugate);
  }
}

TEST_CASE("Wu vector properties on random trees") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const PlumbingGraph g = random_tree(rng, 7, 3);
    const IntersectionForm f(g);
    auto brute = wu_candidates_brute_force(f);
    auto lin = wu_candidates_linear(f);
    std::sort(brute.begin(), brute.end());
    std::sort(lin.begin(), lin.end());
    CHECK(brute == lin);
    std::size_t self_conjugate = 0;
    for (const SpinCOrbit& o : enumerate_orbits(f)) {
      if (!o.self_conjugate) continue;
      ++self_conjugate;
      const WuData wu = wu_vector(g, o);
      for (std::size_t i = 0; i < f.size(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < f.size(); ++j) acc += f(i, j) * wu.w[j];
        CHECK((acc - f(i, i)) % 2 == 0);
      }
      for (std::int64_t a : wu.wu_set) {
        for (std::int64_t b : wu.wu_set) {
          if (a != b) CHECK_FALSE(g.adjacent(g.index_of(a), g.index_of(b)));
        }
      }
      std::int64_t w2 = 0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < f.size(); ++j) w2 += wu.w[i] * f(i, j) * wu.w[j];
      }
      CHECK(wu.mubar * 8 == -static_cast<long>(f.size()) - w2);
    }
    // Spin structures correspond to Wu vectors, one per self-conjugate orbit.
    CHECK(self_conjugate == brute.size());
  }
}
