#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace latticeroot {

/// Dense matrix over GF(2) with bit-packed rows.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool v = true);
  void flip(std::size_t r, std::size_t c) {
    data_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
  }

  std::size_t rank() const;

  /// Solutions of A x = b: a particular solution and a kernel basis.
  struct Solution {
    std::vector<std::uint8_t> particular;
    std::vector<std::vector<std::uint8_t>> kernel;
  };
  std::optional<Solution> solve(const std::vector<std::uint8_t>& rhs) const;

 private:
  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> data_;
};

/// Incremental row space over GF(2); insert() reports whether the vector
/// was independent of everything inserted so far.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t cols) : words_((cols + 63) / 64) {}
  bool insert(std::vector<std::uint64_t> v);
  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t words() const noexcept { return words_; }

 private:
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace latticeroot
