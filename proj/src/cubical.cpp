#include "latticeroot/cubical.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

#include "latticeroot/errors.hpp"
#include "latticeroot/gf2.hpp"

namespace latticeroot {

namespace {

struct CellKey {
  std::uint32_t base;
  std::uint64_t mask;
  bool operator==(const CellKey& o) const { return base == o.base && mask == o.mask; }
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = k.mask * 0x9E3779B97F4A7C15ULL;
    h ^= (static_cast<std::uint64_t>(k.base) + 0x632BE59BD9B4E019ULL) * 0xBF58476D1CE4E5B9ULL;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// a ^= b for columns sorted by cell_less.
void xor_into(std::vector<Cell>& a, const std::vector<Cell>& b, std::vector<Cell>& scratch) {
  scratch.clear();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (cell_less(a[i], b[j])) {
      scratch.push_back(a[i++]);
    } else if (cell_less(b[j], a[i])) {
      scratch.push_back(b[j++]);
    } else {
      ++i;
      ++j;
    }
  }
  scratch.insert(scratch.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  scratch.insert(scratch.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  a.swap(scratch);
}

}  // namespace

void CellIndex::reserve(std::size_t n) {
  std::size_t cap = 16;
  while (cap < 2 * n + 2) cap *= 2;
  slots_.assign(cap, Slot{0, 0, 0});
  used_ = 0;
}

std::uint64_t CellIndex::hash(std::uint32_t base, std::uint64_t mask) {
  return CellKeyHash{}(CellKey{base, mask});
}

void CellIndex::insert(const Cell& c, std::uint32_t idx) {
  if (2 * (used_ + 1) > slots_.size()) {
    std::vector<Slot> old;
    old.swap(slots_);
    reserve(used_ + 1 > old.size() ? used_ + 1 : old.size());
    for (const auto& s : old) {
      if (s.idx != 0) insert(Cell{s.base, s.mask, 0}, s.idx - 1);
    }
  }
  const std::size_t m = slots_.size() - 1;
  std::size_t pos = hash(c.base, c.mask) & m;
  while (slots_[pos].idx != 0) pos = (pos + 1) & m;
  slots_[pos] = Slot{c.base, c.mask, idx + 1};
  ++used_;
}

std::int64_t CellIndex::find(std::uint32_t base, std::uint64_t mask) const {
  if (slots_.empty()) return -1;
  const std::size_t m = slots_.size() - 1;
  std::size_t pos = hash(base, mask) & m;
  while (slots_[pos].idx != 0) {
    if (slots_[pos].base == base && slots_[pos].mask == mask) return slots_[pos].idx - 1;
    pos = (pos + 1) & m;
  }
  return -1;
}

CubicalComplex::CubicalComplex(const PointSet& points, std::size_t max_dim)
    : points_(&points), s_(points.dim()) {
  if (s_ > 64) throw CapacityExceeded("cubical complexes support at most 64 vertices");
  max_dim = std::min(max_dim, s_);
  const std::size_t n = points.size();
  up_.assign(n * s_, -1);
  down_.assign(n * s_, -1);
  std::vector<Coord> tmp(s_);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(points.point(i), points.point(i) + s_, tmp.begin());
    for (std::size_t j = 0; j < s_; ++j) {
      ++tmp[j];
      std::size_t k = points.find(tmp.data());
      --tmp[j];
      if (k != PointSet::npos) {
        up_[i * s_ + j] = static_cast<std::int32_t>(k);
        down_[k * s_ + j] = static_cast<std::int32_t>(i);
      }
    }
  }
  cells_.resize(max_dim + 1);
  index_.resize(max_dim + 1);
  cells_[0].reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cells_[0].push_back(Cell{static_cast<std::uint32_t>(i), 0, points.weight(i)});
  }
  for (std::size_t q = 0; q < max_dim; ++q) {
    auto& next = cells_[q + 1];
    for (const Cell& c : cells_[q]) {
      const std::size_t start = c.mask == 0 ? 0 : 64 - static_cast<std::size_t>(std::countl_zero(c.mask));
      for (std::size_t j = start; j < s_; ++j) {
        std::int32_t b2 = up_[c.base * s_ + j];
        if (b2 < 0) continue;
        std::int64_t other;
        if (q == 0) {
          other = b2;
        } else {
          other = index_[q].find(static_cast<std::uint32_t>(b2), c.mask);
          if (other < 0) continue;
        }
        std::int64_t w = std::max(c.weight, cells_[q][static_cast<std::size_t>(other)].weight);
        next.push_back(Cell{c.base, c.mask | (std::uint64_t{1} << j), w});
      }
    }
    std::sort(next.begin(), next.end(), cell_less);
    index_[q + 1].reserve(next.size());
    for (std::size_t k = 0; k < next.size(); ++k) {
      index_[q + 1].insert(next[k], static_cast<std::uint32_t>(k));
    }
  }
}

std::int64_t CubicalComplex::find(std::uint32_t base, std::uint64_t mask) const {
  const std::size_t q = static_cast<std::size_t>(std::popcount(mask));
  if (q == 0) return base;
  if (q >= cells_.size()) return -1;
  return index_[q].find(base, mask);
}

std::int64_t CubicalComplex::step(std::uint32_t base, std::size_t j, int sign) const {
  return sign > 0 ? up_[base * s_ + j] : down_[base * s_ + j];
}

bool CubicalComplex::coface_weight(std::uint32_t base, std::uint64_t mask,
                                   std::int64_t& weight) const {
  const std::size_t j = static_cast<std::size_t>(std::countr_zero(mask));
  const std::uint64_t facet = mask & ~(std::uint64_t{1} << j);
  std::int64_t a = find(base, facet);
  if (a < 0) return false;
  std::int64_t b2 = up_[base * s_ + j];
  if (b2 < 0) return false;
  std::int64_t b = find(static_cast<std::uint32_t>(b2), facet);
  if (b < 0) return false;
  const std::size_t q = static_cast<std::size_t>(std::popcount(facet));
  weight = std::max(cells_[q][static_cast<std::size_t>(a)].weight,
                    cells_[q][static_cast<std::size_t>(b)].weight);
  return true;
}

BettiTable persistent_betti(const CubicalComplex& complex, std::size_t max_q, std::int64_t lo,
                            std::int64_t hi) {
  if (complex.max_dim() < max_q) {
    throw InternalMismatch("complex was built with too few dimensions");
  }
  const std::size_t s = complex.points().dim();
  BettiTable out;
  out.lo = lo;
  out.hi = hi;
  out.max_q = max_q;
  const std::size_t levels = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
  // negatives[q][level]: q-cells of weight == level that kill a (q-1)-class.
  std::vector<std::vector<std::size_t>> born(max_q + 2, std::vector<std::size_t>(levels, 0));
  std::vector<std::vector<std::size_t>> negatives(max_q + 2, std::vector<std::size_t>(levels, 0));
  auto bucket = [&](std::int64_t w) -> std::int64_t {
    if (w > hi) return -1;
    return std::max<std::int64_t>(w, lo) - lo;
  };
  for (std::size_t q = 0; q <= max_q; ++q) {
    for (const Cell& c : complex.cells(q)) {
      auto b = bucket(c.weight);
      if (b >= 0) ++born[q][static_cast<std::size_t>(b)];
    }
  }

  // Dimension 0 by union-find over edges in filtration order.
  std::vector<char> cleared_prev;
  {
    const std::size_t n = complex.points().size();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    const auto& edges = complex.cells(std::min<std::size_t>(1, complex.max_dim()));
    if (complex.max_dim() >= 1) {
      cleared_prev.assign(edges.size(), 0);
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const Cell& e = edges[k];
        const std::size_t j = static_cast<std::size_t>(std::countr_zero(e.mask));
        std::uint32_t a = find(e.base);
        std::uint32_t b = find(static_cast<std::uint32_t>(complex.step(e.base, j, +1)));
        if (a == b) continue;
        parent[std::max(a, b)] = std::min(a, b);
        cleared_prev[k] = 1;
        auto bk = bucket(e.weight);
        if (bk >= 0) ++negatives[1][static_cast<std::size_t>(bk)];
      }
    } else if (s > 0 && max_q == 0) {
      // Edges are needed even for h^0; build them on the fly.
      std::vector<Cell> tmp;
      for (std::uint32_t b = 0; b < complex.points().size(); ++b) {
        for (std::size_t j = 0; j < s; ++j) {
          std::int64_t w;
          if (complex.coface_weight(b, std::uint64_t{1} << j, w)) tmp.push_back(Cell{b, std::uint64_t{1} << j, w});
        }
      }
      std::sort(tmp.begin(), tmp.end(), cell_less);
      for (const Cell& e : tmp) {
        const std::size_t j = static_cast<std::size_t>(std::countr_zero(e.mask));
        std::uint32_t a = find(e.base);
        std::uint32_t b = find(static_cast<std::uint32_t>(complex.step(e.base, j, +1)));
        if (a == b) continue;
        parent[std::max(a, b)] = std::min(a, b);
        auto bk = bucket(e.weight);
        if (bk >= 0) ++negatives[1][static_cast<std::size_t>(bk)];
      }
    }
  }

  // Dimensions 1..max_q by coboundary reduction with clearing.
  std::vector<Cell> column, scratch;
  for (std::size_t q = 1; q <= max_q; ++q) {
    const auto& cells = complex.cells(q);
    std::vector<char> cleared_next;
    if (q + 1 <= complex.max_dim()) cleared_next.assign(complex.cells(q + 1).size(), 0);
    std::unordered_map<CellKey, std::uint32_t, CellKeyHash> owner;
    std::vector<std::vector<Cell>> reduced;
    for (std::size_t idx = cells.size(); idx-- > 0;) {
      if (!cleared_prev.empty() && cleared_prev[idx]) continue;
      const Cell& c = cells[idx];
      column.clear();
      for (std::size_t j = 0; j < s; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (c.mask & bit) continue;
        std::int64_t w;
        if (complex.coface_weight(c.base, c.mask | bit, w)) {
          column.push_back(Cell{c.base, c.mask | bit, w});
        }
        std::int64_t below = complex.step(c.base, j, -1);
        if (below >= 0 &&
            complex.coface_weight(static_cast<std::uint32_t>(below), c.mask | bit, w)) {
          column.push_back(Cell{static_cast<std::uint32_t>(below), c.mask | bit, w});
        }
      }
      std::sort(column.begin(), column.end(), cell_less);
      while (!column.empty()) {
        auto it = owner.find(CellKey{column.front().base, column.front().mask});
        if (it == owner.end()) break;
        xor_into(column, reduced[it->second], scratch);
      }
      if (column.empty()) continue;
      const Cell pivot = column.front();
      owner.emplace(CellKey{pivot.base, pivot.mask}, static_cast<std::uint32_t>(reduced.size()));
      reduced.push_back(column);
      auto bk = bucket(pivot.weight);
      if (bk >= 0) ++negatives[q + 1][static_cast<std::size_t>(bk)];
      if (!cleared_next.empty()) {
        std::int64_t k = complex.find(pivot.base, pivot.mask);
        if (k >= 0) cleared_next[static_cast<std::size_t>(k)] = 1;
      }
    }
    cleared_prev.swap(cleared_next);
  }

  out.betti.assign(levels, std::vector<std::size_t>(max_q + 1, 0));
  out.cell_count.assign(levels, std::vector<std::size_t>(max_q + 1, 0));
  std::vector<std::size_t> cum_born(max_q + 2, 0), cum_neg(max_q + 2, 0);
  for (std::size_t l = 0; l < levels; ++l) {
    for (std::size_t q = 0; q <= max_q + 1; ++q) {
      cum_born[q] += born[q][l];
      cum_neg[q] += negatives[q][l];
    }
    for (std::size_t q = 0; q <= max_q; ++q) {
      out.cell_count[l][q] = cum_born[q];
      out.betti[l][q] = cum_born[q] - cum_neg[q] - cum_neg[q + 1];
    }
  }
  return out;
}

std::vector<std::size_t> dense_betti(const CubicalComplex& complex, std::int64_t n) {
  const std::size_t top = complex.max_dim();
  const std::size_t s = complex.points().dim();
  std::vector<std::vector<std::size_t>> idx(top + 1);
  std::vector<std::vector<std::int64_t>> pos(top + 1);
  for (std::size_t q = 0; q <= top; ++q) {
    pos[q].assign(complex.cells(q).size(), -1);
    for (std::size_t k = 0; k < complex.cells(q).size(); ++k) {
      if (complex.cells(q)[k].weight <= n) {
        pos[q][k] = static_cast<std::int64_t>(idx[q].size());
        idx[q].push_back(k);
      }
    }
  }
  // rank of the boundary from dimension q to q - 1.
  std::vector<std::size_t> rank(top + 2, 0);
  for (std::size_t q = 1; q <= top; ++q) {
    BitMatrix d(idx[q].size(), idx[q - 1].size());
    for (std::size_t r = 0; r < idx[q].size(); ++r) {
      const Cell& c = complex.cells(q)[idx[q][r]];
      for (std::size_t j = 0; j < 64; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (!(c.mask & bit)) continue;
        const std::uint64_t facet = c.mask & ~bit;
        std::int64_t a = complex.find(c.base, facet);
        std::int64_t b = complex.find(static_cast<std::uint32_t>(complex.step(c.base, j, +1)), facet);
        d.flip(r, static_cast<std::size_t>(pos[q - 1][static_cast<std::size_t>(a)]));
        d.flip(r, static_cast<std::size_t>(pos[q - 1][static_cast<std::size_t>(b)]));
      }
    }
    rank[q] = d.rank();
  }
  std::vector<std::size_t> out;
  if (top == 0 && s > 0) throw InvalidInput("dense_betti needs the edges of the complex");
  const std::size_t last = top == s ? top : top - 1;
  for (std::size_t q = 0; q <= last; ++q) out.push_back(idx[q].size() - rank[q] - rank[q + 1]);
  return out;
}

}  // namespace latticeroot
