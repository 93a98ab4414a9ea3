#include "latticeroot/exact.hpp"

#include <cmath>
#include <utility>

#include "latticeroot/errors.hpp"

namespace latticeroot {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::malformed_graph: return "MalformedGraph";
    case ErrorCode::invalid_seifert_data: return "InvalidSeifertData";
    case ErrorCode::not_definite: return "NotDefinite";
    case ErrorCode::not_characteristic: return "NotCharacteristic";
    case ErrorCode::not_self_conjugate: return "NotSelfConjugate";
    case ErrorCode::no_wu_representative: return "NoWuRepresentative";
    case ErrorCode::capacity_exceeded: return "CapacityExceeded";
    case ErrorCode::stabilization_not_reached: return "StabilizationNotReached";
    case ErrorCode::too_many_bad_vertices: return "TooManyBadVertices";
    case ErrorCode::internal_mismatch: return "InternalMismatch";
    case ErrorCode::parity_mismatch: return "ParityMismatch";
    case ErrorCode::inconsistent_ranks: return "InconsistentRanks";
    case ErrorCode::ambiguous: return "Ambiguous";
    case ErrorCode::conjecture_required: return "ConjectureRequired";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string out;
  while (u != 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.insert(out.begin(), '-');
  return out;
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw InvalidInput("not an exact rational: '" + text + "'");
  }
  if (q.get_den() == 0) throw InvalidInput("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) {
    throw CapacityExceeded("integer " + z.get_str() + " exceeds 64 bits");
  }
  return z.get_si();
}

i128 to_i128(const Integer& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 120) {
    throw CapacityExceeded("integer " + z.get_str() + " exceeds 120 bits");
  }
  Integer a = abs(z);
  Integer hi = a >> 64;
  Integer lo = a - (hi << 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(hi.get_ui()) << 64) |
                        static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
  // mpz_get_ui only returns the low limb, which is all of `lo` on LP64.
  i128 v = static_cast<i128>(u);
  return sgn(z) < 0 ? -v : v;
}

i128 isqrt(i128 v) {
  if (v < 0) throw InternalMismatch("isqrt of a negative value");
  if (v < 2) return v;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

Integer determinant(const std::vector<Integer>& rows, std::size_t n) {
  if (n == 0) return 1;
  std::vector<Integer> a(rows);
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a(m);
  RationalMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw NotDefinite("matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

Inertia symmetric_inertia(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a(m);
  Inertia out;
  out.determinant = 1;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, piv) == 0) ++piv;
    if (piv == n) {
      // All remaining diagonal entries vanish; look for an off-diagonal one.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
        }
      }
      if (pi == n) {
        // Remaining block is zero.
        out.zero += static_cast<int>(n - k);
        for (std::size_t r = k; r < n; ++r) out.pivots.push_back(0);
        det = 0;
        break;
      }
      // e_pi <- e_pi + e_pj: row and column operation, determinant unchanged.
      for (std::size_t j = 0; j < n; ++j) a(pi, j) += a(pj, j);
      for (std::size_t i = 0; i < n; ++i) a(i, pi) += a(i, pj);
      piv = pi;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, piv));
    }
    const Rational p = a(k, k);
    out.pivots.push_back(p);
    det *= p;
    if (p < 0) {
      ++out.negative;
    } else {
      ++out.positive;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / p;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
    for (std::size_t j = k + 1; j < n; ++j) a(k, j) = 0;
    for (std::size_t i = k + 1; i < n; ++i) a(i, k) = 0;
  }
  det.canonicalize();
  out.determinant = det.get_num();
  return out;
}

}  // namespace latticeroot
