#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "latticeroot/exact.hpp"
#include "latticeroot/plumbing.hpp"

namespace latticeroot {

using Coord = std::int32_t;
using Point = std::vector<Coord>;

std::uint64_t default_point_budget();

/// The weight function w0(x) = -((x,x) + (x,k))/2 on Z^s for a negative
/// definite form and a characteristic vector given in dual coordinates.
class WeightedLattice {
 public:
  WeightedLattice(IntersectionForm form, std::vector<std::int64_t> ell);

  /// Same form, another characteristic vector; reuses the form data.
  WeightedLattice with_ell(std::vector<std::int64_t> ell) const;

  std::size_t dim() const noexcept { return form_.size(); }
  const IntersectionForm& form() const noexcept { return form_; }
  const std::vector<std::int64_t>& ell() const noexcept { return ell_; }

  std::int64_t weight(const Coord* x) const;
  std::int64_t weight(const Point& x) const { return weight(x.data()); }

  /// k^2 = l^T M^{-1} l.
  const Rational& k_square() const noexcept { return k_square_; }
  /// kappa = M^{-1} l; integral exactly when the orbit is self-conjugate.
  std::vector<Rational> kappa() const;
  /// Lower bound for w0 over R^s, attained at -kappa/2: k^2/8.
  Rational continuous_minimum() const { return k_square_ / 8; }
  /// Smallest value of w0 on Z^s.
  std::int64_t minimum_level() const;

  /// Estimate of #{x : w0(x) <= n} from the ellipsoid volume.
  double predicted_count(std::int64_t n) const;

  /// Calls fn(x, w0(x)) for every x with w0(x) <= n, in lexicographic
  /// order. Completeness is exact: coordinate intervals come from integer
  /// Schur complement bounds, never from a box. With `first` set, the first
  /// coordinate is fixed to that value.
  void enumerate(std::int64_t n,
                 const std::function<void(const Coord*, std::int64_t)>& fn,
                 const std::int64_t* first = nullptr) const;

  /// Minimum of w0 on the fibre {x : x_0 = i}, as a rational lower bound
  /// over the reals (used to certify fibre ranges).
  Rational fibre_lower_bound(std::int64_t i) const;

  /// Enumeration refuses levels whose predicted or actual point count
  /// exceeds the budget (CapacityExceeded).
  void set_budget(std::uint64_t budget) { budget_ = budget; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  void check_budget(std::int64_t n) const;
  void set_ell(std::vector<std::int64_t> ell);

  IntersectionForm form_;
  std::vector<std::int64_t> ell_;
  Rational k_square_;
  std::vector<std::int64_t> a_;  // -M
  // Schur complement data for the recursive interval bounds.
  std::vector<i128> delta_;         // delta_[i + 1] = det A[i+1:, i+1:]
  std::vector<i128> adj_;           // det(M) * M^{-1}
  std::vector<std::vector<i128>> h_;  // first adjugate row of A[i:, i:]
  std::vector<i128> h_ell_;         // h_i . ell[i:]
  std::vector<std::vector<i128>> h_a_;  // h_i . A[i:, j], j < i
  i128 m_start_ = 0;
  std::uint64_t budget_ = 0;
};

/// All lattice points of a sublevel set, stored flat, with an index for
/// unit-step neighbour lookups.
class PointSet {
 public:
  explicit PointSet(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  const Coord* point(std::size_t i) const { return coords_.data() + i * dim_; }
  Point point_vector(std::size_t i) const {
    return Point(point(i), point(i) + dim_);
  }
  std::int64_t weight(std::size_t i) const { return weights_[i]; }

  /// Appends a point; returns its index. Duplicates are the caller's bug.
  std::size_t add(const Coord* x, std::int64_t w);
  /// Index of x, or npos.
  std::size_t find(const Coord* x) const;
  std::size_t find(const Point& x) const { return find(x.data()); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::uint64_t hash(const Coord* x) const;
  void grow();

  std::size_t dim_;
  std::vector<Coord> coords_;
  std::vector<std::int64_t> weights_;
  std::vector<std::uint32_t> table_;  // open addressing, index + 1, 0 = empty
};

/// Points with w0 <= n, ordered by (weight, lexicographic).
PointSet collect_points(const WeightedLattice& lat, std::int64_t n);

}  // namespace latticeroot
