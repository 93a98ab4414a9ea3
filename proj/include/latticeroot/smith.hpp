#pragma once

#include <cstddef>
#include <vector>

#include "latticeroot/exact.hpp"

namespace latticeroot {

/// Smith normal form U M V = diag(d) of a square integer matrix, with
/// d_i | d_{i+1}, d_i >= 0, and U, V unimodular. u_inverse is U^{-1}.
struct SmithForm {
  std::size_t n = 0;
  std::vector<Integer> u;          // row-major n x n
  std::vector<Integer> u_inverse;  // row-major n x n
  std::vector<Integer> v;          // row-major n x n
  std::vector<Integer> d;
};

SmithForm smith_normal_form(const std::vector<Integer>& m, std::size_t n);

}  // namespace latticeroot
