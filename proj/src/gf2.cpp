#include "latticeroot/gf2.hpp"

#include <bit>
#include <utility>

namespace latticeroot {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 64) / 64), data_(rows * words_, 0) {}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  std::uint64_t bit = std::uint64_t{1} << (c % 64);
  if (v) {
    data_[r * words_ + c / 64] |= bit;
  } else {
    data_[r * words_ + c / 64] &= ~bit;
  }
}

std::size_t BitMatrix::rank() const {
  std::vector<std::uint64_t> a(data_);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows_ && !(a[piv * words_ + w] & bit)) ++piv;
    if (piv == rows_) continue;
    if (piv != rank) {
      for (std::size_t k = 0; k < words_; ++k) std::swap(a[piv * words_ + k], a[rank * words_ + k]);
    }
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      if (a[r * words_ + w] & bit) {
        for (std::size_t k = w; k < words_; ++k) a[r * words_ + k] ^= a[rank * words_ + k];
      }
    }
    ++rank;
  }
  return rank;
}

std::optional<BitMatrix::Solution> BitMatrix::solve(const std::vector<std::uint8_t>& rhs) const {
  // Augmented column at index cols_ (words_ leaves room for it).
  std::vector<std::uint64_t> a(data_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t bit = std::uint64_t{1} << (cols_ % 64);
    if (rhs[r] & 1U) {
      a[r * words_ + cols_ / 64] |= bit;
    } else {
      a[r * words_ + cols_ / 64] &= ~bit;
    }
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows_ && !(a[piv * words_ + w] & bit)) ++piv;
    if (piv == rows_) continue;
    if (piv != rank) {
      for (std::size_t k = 0; k < words_; ++k) std::swap(a[piv * words_ + k], a[rank * words_ + k]);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != rank && (a[r * words_ + w] & bit)) {
        for (std::size_t k = 0; k < words_; ++k) a[r * words_ + k] ^= a[rank * words_ + k];
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  auto bit_at = [&](std::size_t r, std::size_t c) {
    return static_cast<std::uint8_t>((a[r * words_ + c / 64] >> (c % 64)) & 1U);
  };
  for (std::size_t r = rank; r < rows_; ++r) {
    if (bit_at(r, cols_)) return std::nullopt;
  }
  Solution sol;
  sol.particular.assign(cols_, 0);
  std::vector<char> is_pivot(cols_, 0);
  for (std::size_t r = 0; r < rank; ++r) {
    is_pivot[pivot_col[r]] = 1;
    sol.particular[pivot_col[r]] = bit_at(r, cols_);
  }
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint8_t> k(cols_, 0);
    k[f] = 1;
    for (std::size_t r = 0; r < rank; ++r) k[pivot_col[r]] = bit_at(r, f);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

bool Gf2Basis::insert(std::vector<std::uint64_t> v) {
  v.resize(words_, 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if ((v[p / 64] >> (p % 64)) & 1U) {
      for (std::size_t k = 0; k < words_; ++k) v[k] ^= rows_[i][k];
    }
  }
  for (std::size_t k = 0; k < words_; ++k) {
    if (v[k] != 0) {
      std::size_t p = k * 64 + static_cast<std::size_t>(std::countr_zero(v[k]));
      // Keep the basis fully reduced on pivot columns.
      for (auto& row : rows_) {
        if ((row[p / 64] >> (p % 64)) & 1U) {
          for (std::size_t t = 0; t < words_; ++t) row[t] ^= v[t];
        }
      }
      rows_.push_back(std::move(v));
      pivots_.push_back(p);
      return true;
    }
  }
  return false;
}

}  // namespace latticeroot
