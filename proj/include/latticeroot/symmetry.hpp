#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latticeroot/exact.hpp"
#include "latticeroot/graded_root.hpp"

namespace latticeroot {

struct LevelSymmetry {
  std::int64_t level = 0;
  std::vector<std::uint32_t> involution;  // component -> component
  std::optional<std::uint32_t> fixed;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

struct SymmetryData {
  std::vector<std::int64_t> kappa;  // M^{-1} ell
  std::vector<LevelSymmetry> levels;  // n_min .. n_stab
  std::int64_t r = 0;  // lattice grading of the derived tower bottom
  Rational rho;        // r + sigma
  std::int64_t centre_r = 0;  // twice the weight of the cube around -kappa/2

  const LevelSymmetry& at(std::int64_t n) const;
  /// 1 when S_n has a J-invariant component, for any n >= n_min.
  std::size_t fixed_rank(std::int64_t n) const;
  nlohmann::json to_json() const;
};

/// Jx = -x - kappa.
Point reflect(const Point& x, const std::vector<std::int64_t>& kappa);

/// The J-action on components of every slice, with w0(Jx) = w0(x) checked
/// on every enumerated point. Throws NotSelfConjugate for other orbits.
SymmetryData involution_on_slices(const LatticeAnalysis& analysis);

/// r from the minimal cube containing -kappa/2 (twice its weight).
std::int64_t centre_cube_r(const WeightedLattice& lat, const std::vector<std::int64_t>& kappa);

/// Least lattice grading 2n with a J-invariant component.
std::int64_t scan_r(const SymmetryData& sym);

struct DerivedModule {
  std::int64_t n_min = 0;
  std::vector<std::size_t> ranks;  // rank of ker(1+J)/im(1+J) at grading 2n
  std::int64_t r = 0;
  bool single_tower = false;
};

DerivedModule derived_cohomology(const SymmetryData& sym, const GradedRoot& root);

/// h^1(S_n) and the rank of 1 + J on it.
struct H1Symmetry {
  std::size_t h1 = 0;
  std::size_t rank_one_plus_j = 0;
  std::size_t derived() const { return h1 - 2 * rank_one_plus_j; }
};

H1Symmetry h1_symmetry(const LatticeAnalysis& analysis, const std::vector<std::int64_t>& kappa,
                       std::int64_t n);

/// Ranks of B' = ker(1+J)/im(1+J) on H^0 + H^1[-1], keyed by lattice
/// grading (2n for H^0, 2n - 1 for H^1), for n_min <= n <= n_stab.
std::vector<std::pair<std::int64_t, std::size_t>> derived_total(const LatticeAnalysis& analysis,
                                                                const SymmetryData& sym);

}  // namespace latticeroot
