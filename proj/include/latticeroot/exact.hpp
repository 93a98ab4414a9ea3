#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace latticeroot {

using Integer = mpz_class;
using Rational = mpq_class;
using i128 = __int128;

/// "p/q", or "p" when the denominator is one. Never a decimal.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(i128 v);

Rational parse_rational(const std::string& text);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Exact conversion; throws CapacityExceeded when the value does not fit.
std::int64_t to_int64(const Integer& z);
i128 to_i128(const Integer& z);

/// floor(sqrt(v)) for v >= 0.
i128 isqrt(i128 v);
i128 floor_div(i128 a, i128 b);
i128 ceil_div(i128 a, i128 b);

/// Dense row-major square matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), a_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

/// Exact determinant of a square integer matrix (Bareiss, fraction free).
Integer determinant(const std::vector<Integer>& rows, std::size_t n);

/// Exact inverse; throws NotDefinite on a singular matrix.
RationalMatrix inverse(const RationalMatrix& m);

/// Counts of negative, zero and positive diagonal entries of a congruence
/// diagonalisation of a symmetric matrix, plus its determinant.
struct Inertia {
  int negative = 0;
  int zero = 0;
  int positive = 0;
  Integer determinant;
  std::vector<Rational> pivots;

  int signature() const noexcept { return positive - negative; }
};

/// Symmetric LDL^T by congruence over Q. Zero pivots are handled by the
/// substitution e_i <- e_i + e_j, so every symmetric matrix is accepted.
Inertia symmetric_inertia(const RationalMatrix& m);

}  // namespace latticeroot
