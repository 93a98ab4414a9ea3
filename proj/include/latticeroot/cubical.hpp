#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "latticeroot/lattice.hpp"

namespace latticeroot {

/// A cube of Z^s: base point (index into a PointSet) plus the set of
/// positive unit directions it spans. Its weight is the maximum of the
/// weights of its 2^q vertices.
struct Cell {
  std::uint32_t base = 0;
  std::uint64_t mask = 0;
  std::int64_t weight = 0;
};

inline bool cell_less(const Cell& a, const Cell& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.base != b.base) return a.base < b.base;
  return a.mask < b.mask;
}

/// Hash index over cells of one dimension.
class CellIndex {
 public:
  void reserve(std::size_t n);
  void insert(const Cell& c, std::uint32_t idx);
  /// Index of (base, mask), or -1.
  std::int64_t find(std::uint32_t base, std::uint64_t mask) const;

 private:
  static std::uint64_t hash(std::uint32_t base, std::uint64_t mask);
  struct Slot {
    std::uint32_t base;
    std::uint64_t mask;
    std::uint32_t idx;  // index + 1; 0 marks an empty slot
  };
  std::vector<Slot> slots_;
  std::size_t used_ = 0;
};

/// Cubical complex spanned by a point set: a cube is present iff all its
/// vertices are. Cells are built up to dimension max_dim.
class CubicalComplex {
 public:
  CubicalComplex(const PointSet& points, std::size_t max_dim);

  const PointSet& points() const noexcept { return *points_; }
  std::size_t max_dim() const noexcept { return cells_.size() - 1; }
  const std::vector<Cell>& cells(std::size_t q) const { return cells_[q]; }
  /// Index of the cell (base, mask) of dimension popcount(mask), or -1.
  std::int64_t find(std::uint32_t base, std::uint64_t mask) const;
  /// Point index of base + e_j (sign > 0) or base - e_j, or -1.
  std::int64_t step(std::uint32_t base, std::size_t j, int sign) const;
  /// Weight of the cube (base, mask) when it is present, computed from its
  /// two facets in direction j (any j in mask); -1 in `present` otherwise.
  bool coface_weight(std::uint32_t base, std::uint64_t mask, std::int64_t& weight) const;

 private:
  const PointSet* points_;
  std::size_t s_;
  std::vector<std::int32_t> up_, down_;
  std::vector<std::vector<Cell>> cells_;
  std::vector<CellIndex> index_;
};

/// Betti numbers h^q(S_n), 0 <= q <= max_q, for every level n in
/// [lo, hi], computed by persistence over GF(2). Rows indexed by level.
struct BettiTable {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::size_t max_q = 0;
  std::vector<std::vector<std::size_t>> betti;       // [level - lo][q]
  std::vector<std::vector<std::size_t>> cell_count;  // [level - lo][q]

  std::size_t at(std::int64_t level, std::size_t q) const {
    return betti[static_cast<std::size_t>(level - lo)][q];
  }
};

/// The complex must contain cells up to dimension max_q (the cells of
/// dimension max_q + 1 are enumerated on the fly).
BettiTable persistent_betti(const CubicalComplex& complex, std::size_t max_q, std::int64_t lo,
                            std::int64_t hi);

/// Betti numbers of the single sublevel set {w0 <= n} from explicit dense
/// boundary matrices; a slow reference used to cross-check persistence.
/// Returns h^q for q < max_dim (all q when max_dim is the full dimension).
std::vector<std::size_t> dense_betti(const CubicalComplex& complex, std::int64_t n);

}  // namespace latticeroot
