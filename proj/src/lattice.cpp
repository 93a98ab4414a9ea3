#include "latticeroot/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "latticeroot/errors.hpp"

namespace latticeroot {

namespace {

constexpr std::uint64_t kDefaultBudget = 100000000ULL;

i128 exact_i128(const Rational& q, const char* what) {
  if (!is_integer(q)) throw InternalMismatch(std::string(what) + " is not integral");
  return to_i128(q.get_num());
}

}  // namespace

std::uint64_t default_point_budget() {
  if (const char* env = std::getenv("LATTICEROOT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

WeightedLattice::WeightedLattice(IntersectionForm form, std::vector<std::int64_t> ell)
    : form_(std::move(form)), budget_(default_point_budget()) {
  const std::size_t s = form_.size();
  if (ell.size() != s) throw InvalidInput("characteristic vector has the wrong length");
  if (!form_.is_negative_definite()) throw NotDefinite("intersection form is not negative definite");
  Integer det = abs(form_.determinant());
  if (mpz_sizeinbase(det.get_mpz_t(), 2) > 40) {
    throw CapacityExceeded("determinant " + det.get_str() + " is too large for exact enumeration");
  }

  a_.resize(s * s);
  for (std::size_t i = 0; i < s * s; ++i) a_[i] = -form_.entries()[i];

  RationalMatrix minv = form_.inverse();
  const Rational signed_det(form_.determinant());
  adj_.resize(s * s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) adj_[i * s + j] = exact_i128(minv(i, j) * signed_det, "adjugate");
  }

  // Tail blocks B_i = A[i:, i:]; delta_[i] = det B_i, delta_[s] = 1.
  delta_.assign(s + 1, 1);
  h_.assign(s, {});
  h_a_.assign(s, {});
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t t = s - i;
    RationalMatrix b(t);
    std::vector<Integer> rows(t * t);
    for (std::size_t r = 0; r < t; ++r) {
      for (std::size_t c = 0; c < t; ++c) {
        b(r, c) = Rational(static_cast<long>(a_[(i + r) * s + i + c]));
        rows[r * t + c] = Integer(static_cast<long>(a_[(i + r) * s + i + c]));
      }
    }
    Integer d = determinant(rows, t);
    delta_[i] = to_i128(d);
    RationalMatrix binv = latticeroot::inverse(b);
    h_[i].resize(t);
    for (std::size_t c = 0; c < t; ++c) h_[i][c] = exact_i128(binv(0, c) * Rational(d), "adjugate row");
    h_a_[i].assign(i, 0);
    for (std::size_t j = 0; j < i; ++j) {
      i128 acc = 0;
      for (std::size_t c = 0; c < t; ++c) acc += h_[i][c] * a_[(i + c) * s + j];
      h_a_[i][j] = acc;
    }
  }
  set_ell(std::move(ell));
}

WeightedLattice WeightedLattice::with_ell(std::vector<std::int64_t> ell) const {
  if (ell.size() != dim()) throw InvalidInput("characteristic vector has the wrong length");
  WeightedLattice out(*this);
  out.set_ell(std::move(ell));
  return out;
}

std::vector<Rational> WeightedLattice::kappa() const {
  const std::size_t s = dim();
  const i128 det_m = (s % 2 == 0) ? delta_[0] : -delta_[0];
  std::vector<Rational> out(s);
  for (std::size_t i = 0; i < s; ++i) {
    i128 row = 0;
    for (std::size_t j = 0; j < s; ++j) row += adj_[i * s + j] * ell_[j];
    out[i] = Rational(Integer(to_string(row)), Integer(to_string(det_m)));
    out[i].canonicalize();
  }
  return out;
}

void WeightedLattice::set_ell(std::vector<std::int64_t> ell) {
  const std::size_t s = form_.size();
  for (std::size_t v = 0; v < s; ++v) {
    if (((ell[v] - form_(v, v)) % 2) != 0) {
      throw NotCharacteristic("entry " + std::to_string(v) +
                              " has the wrong parity for a characteristic vector");
    }
  }
  ell_ = std::move(ell);
  i128 num = 0;
  for (std::size_t i = 0; i < s; ++i) {
    i128 row = 0;
    for (std::size_t j = 0; j < s; ++j) row += adj_[i * s + j] * ell_[j];
    num += row * ell_[i];
  }
  const i128 det_m = (s % 2 == 0) ? delta_[0] : -delta_[0];  // det(M) = (-1)^s det(A)
  k_square_ = Rational(Integer(to_string(num)), Integer(to_string(det_m)));
  k_square_.canonicalize();
  h_ell_.assign(s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t c = 0; c < s - i; ++c) h_ell_[i] += h_[i][c] * ell_[i + c];
  }
  // M_{-1} = -l^T adj(A) l = 4 det(A) * (min of x^T A x - l^T x) = det(A) * k^2.
  m_start_ = exact_i128(k_square_ * Rational(to_string(delta_[0])), "start value");
}

std::int64_t WeightedLattice::weight(const Coord* x) const {
  const std::size_t s = dim();
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < s; ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = ell_[i];
    const std::int64_t* m = form_.entries().data() + i * s;
    for (std::size_t j = 0; j < s; ++j) row += m[j] * x[j];
    acc += row * x[i];
  }
  return -acc / 2;
}

std::int64_t WeightedLattice::minimum_level() const {
  std::int64_t n = to_int64(ceil_of(continuous_minimum()));
  for (;; ++n) {
    bool found = false;
    enumerate(n, [&](const Coord*, std::int64_t) { found = true; });
    if (found) return n;
  }
}

double WeightedLattice::predicted_count(std::int64_t n) const {
  const double s = static_cast<double>(dim());
  // {q(x) <= 2n} with q = x^T A x - l^T x is an ellipsoid of radius^2 R.
  double r = 2.0 * static_cast<double>(n) - k_square_.get_d() / 4.0;
  if (r < 0) return 0.0;
  double log_vol = (s / 2.0) * std::log(M_PI) - std::lgamma(s / 2.0 + 1.0) +
                   (s / 2.0) * std::log(r) -
                   0.5 * std::log(static_cast<double>(delta_[0]));
  return std::exp(log_vol);
}

void WeightedLattice::check_budget(std::int64_t n) const {
  double predicted = predicted_count(n);
  if (predicted > static_cast<double>(budget_)) {
    throw CapacityExceeded("level " + std::to_string(n) + " is predicted to hold about " +
                           std::to_string(static_cast<long long>(predicted)) +
                           " lattice points, above the budget of " + std::to_string(budget_));
  }
}

void WeightedLattice::enumerate(std::int64_t n,
                                const std::function<void(const Coord*, std::int64_t)>& fn,
                                const std::int64_t* first) const {
  const std::size_t s = dim();
  if (first == nullptr) check_budget(n);
  std::vector<Coord> x(s, 0);
  std::vector<i128> m(s + 1, 0);  // m[i] = M_{i-1}
  std::vector<i128> lo(s), hi(s), centre(s);
  m[0] = m_start_;
  const i128 n8 = 8 * static_cast<i128>(n);
  std::uint64_t count = 0;

  auto bounds = [&](std::size_t i) -> bool {
    i128 c = h_ell_[i];
    for (std::size_t j = 0; j < i; ++j) c -= 2 * h_a_[i][j] * x[j];
    centre[i] = c;
    const i128 d_prev = delta_[i];      // det A[i:, i:]
    const i128 d_cur = delta_[i + 1];   // det A[i+1:, i+1:]
    i128 slack = d_prev * n8 - m[i];
    if (slack < 0) return false;
    i128 rhs = d_cur * slack;
    i128 k = isqrt(rhs);
    lo[i] = ceil_div(c - k, 2 * d_prev);
    hi[i] = floor_div(c + k, 2 * d_prev);
    if (i == 0 && first != nullptr) {
      if (*first < lo[0] || *first > hi[0]) return false;
      lo[0] = hi[0] = *first;
    }
    if (lo[i] > hi[i]) return false;
    if (lo[i] < std::numeric_limits<Coord>::min() || hi[i] > std::numeric_limits<Coord>::max()) {
      throw CapacityExceeded("lattice coordinates exceed 32 bits");
    }
    return true;
  };
  auto descend = [&](std::size_t i) {
    const i128 d_prev = delta_[i];
    const i128 d_cur = delta_[i + 1];
    i128 t = 2 * d_prev * x[i] - centre[i];
    m[i + 1] = (d_cur * m[i] + t * t) / d_prev;
  };

  if (s == 0) return;
  if (!bounds(0)) return;
  std::size_t i = 0;
  x[0] = static_cast<Coord>(lo[0]);
  for (;;) {
    if (x[i] > hi[i]) {
      if (i == 0) break;
      --i;
      ++x[i];
      continue;
    }
    descend(i);
    if (i + 1 == s) {
      // m[s] = 4 q(x) = 8 w0(x)
      std::int64_t w = static_cast<std::int64_t>(m[s] / 8);
      if (++count > budget_) {
        throw CapacityExceeded("level " + std::to_string(n) + " holds more than " +
                               std::to_string(budget_) + " lattice points");
      }
      fn(x.data(), w);
      ++x[i];
      continue;
    }
    ++i;
    if (bounds(i)) {
      x[i] = static_cast<Coord>(lo[i]);
    } else {
      --i;
      ++x[i];
    }
  }
}

Rational WeightedLattice::fibre_lower_bound(std::int64_t i) const {
  const i128 c = h_ell_[0];
  const i128 d_prev = delta_[0];
  const i128 d_cur = delta_[1];
  i128 t = 2 * d_prev * i - c;
  Rational num(to_string(d_cur * m_start_ + t * t));
  Rational den(to_string(8 * d_cur * d_prev));
  Rational out = num / den;
  out.canonicalize();
  return out;
}

std::size_t PointSet::add(const Coord* x, std::int64_t w) {
  if ((weights_.size() + 1) * 2 > table_.size()) grow();
  std::size_t idx = weights_.size();
  coords_.insert(coords_.end(), x, x + dim_);
  weights_.push_back(w);
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = hash(x) & mask;
  while (table_[slot] != 0) slot = (slot + 1) & mask;
  table_[slot] = static_cast<std::uint32_t>(idx + 1);
  return idx;
}

std::size_t PointSet::find(const Coord* x) const {
  if (table_.empty()) return npos;
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = hash(x) & mask;
  while (table_[slot] != 0) {
    std::size_t idx = table_[slot] - 1;
    if (std::equal(x, x + dim_, point(idx))) return idx;
    slot = (slot + 1) & mask;
  }
  return npos;
}

std::uint64_t PointSet::hash(const Coord* x) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (std::size_t i = 0; i < dim_; ++i) {
    h ^= static_cast<std::uint32_t>(x[i]);
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 29;
  }
  return h;
}

void PointSet::grow() {
  std::size_t cap = table_.empty() ? 64 : table_.size() * 2;
  table_.assign(cap, 0);
  const std::size_t mask = cap - 1;
  for (std::size_t idx = 0; idx < weights_.size(); ++idx) {
    std::size_t slot = hash(point(idx)) & mask;
    while (table_[slot] != 0) slot = (slot + 1) & mask;
    table_[slot] = static_cast<std::uint32_t>(idx + 1);
  }
}

PointSet collect_points(const WeightedLattice& lat, std::int64_t n) {
  const std::size_t s = lat.dim();
  std::vector<Coord> flat;
  std::vector<std::int64_t> w;
  lat.enumerate(n, [&](const Coord* x, std::int64_t wt) {
    flat.insert(flat.end(), x, x + s);
    w.push_back(wt);
  });
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  // Enumeration is lexicographic already; a stable sort keeps that inside a level.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  PointSet out(s);
  for (std::size_t idx : order) out.add(flat.data() + idx * s, w[idx]);
  return out;
}

}  // namespace latticeroot
