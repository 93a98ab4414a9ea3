#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latticeroot/exact.hpp"
#include "latticeroot/graded_root.hpp"
#include "latticeroot/symmetry.hpp"

namespace latticeroot {

/// Horizontal position of every node, [n - n_min][node]. The stem sits at
/// column 0; with a symmetry, J-paired subtrees are mirror images.
std::vector<std::vector<std::int64_t>> root_layout(const GradedRoot& root, const SymmetryData* sym);

/// Text drawing with the stem vertical and the highest level on top; each
/// row is labelled with its grading 2n + sigma.
std::string render_ascii(const GradedRoot& root, const SymmetryData* sym, const Rational& sigma);

}  // namespace latticeroot
