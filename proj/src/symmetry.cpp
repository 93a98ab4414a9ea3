#include "latticeroot/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "latticeroot/errors.hpp"
#include "latticeroot/gf2.hpp"
#include "latticeroot/spinc.hpp"

namespace latticeroot {

const LevelSymmetry& SymmetryData::at(std::int64_t n) const {
  return levels[static_cast<std::size_t>(n - levels.front().level)];
}

std::size_t SymmetryData::fixed_rank(std::int64_t n) const {
  if (n < levels.front().level) return 0;
  if (n > levels.back().level) return 1;
  return at(n).fixed ? 1 : 0;
}

nlohmann::json SymmetryData::to_json() const {
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& l : levels) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [a, b] : l.pairs) pairs.push_back({a, b});
    nlohmann::json entry = {{"level", l.level}, {"pairs", pairs}};
    entry["fixed"] = l.fixed ? nlohmann::json(*l.fixed) : nlohmann::json(nullptr);
    lv.push_back(entry);
  }
  return {{"kappa", kappa}, {"levels", lv}, {"r", r}, {"centre_cube_r", centre_r}, {"rho", to_string(rho)}};
}

Point reflect(const Point& x, const std::vector<std::int64_t>& kappa) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<Coord>(-x[i] - kappa[i]);
  return out;
}

SymmetryData involution_on_slices(const LatticeAnalysis& analysis) {
  const WeightedLattice& lat = analysis.lattice();
  SymmetryData sym;
  sym.kappa = integral_kappa(lat.ell(), lat.form());
  const PointSet& pts = analysis.points();
  std::vector<std::size_t> image(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p) {
    Point jx = reflect(pts.point_vector(p), sym.kappa);
    std::size_t q = pts.find(jx);
    if (q == PointSet::npos || lat.weight(jx) != pts.weight(p)) {
      throw InternalMismatch("reflection does not preserve the weight function");
    }
    image[p] = q;
  }
  const GradedRoot& root = analysis.root();
  for (std::int64_t n = root.n_min; n <= root.n_stab; ++n) {
    LevelSymmetry ls;
    ls.level = n;
    for (const auto& node : root.at(n)) {
      ls.involution.push_back(analysis.component(n, image[node.min_point]));
    }
    for (std::uint32_t c = 0; c < ls.involution.size(); ++c) {
      const std::uint32_t d = ls.involution[c];
      if (ls.involution[d] != c) throw InternalMismatch("component map is not an involution");
      if (d == c) {
        if (ls.fixed) {
          throw InternalMismatch("two J-invariant components at level " + std::to_string(n));
        }
        ls.fixed = c;
      } else if (c < d) {
        ls.pairs.emplace_back(c, d);
      }
    }
    sym.levels.push_back(std::move(ls));
  }
  // F is monotone: once a J-invariant component exists it persists.
  bool seen = false;
  for (const auto& l : sym.levels) {
    if (seen && !l.fixed) throw InternalMismatch("J-invariant component disappears going up");
    seen = seen || l.fixed.has_value();
  }
  const std::int64_t by_scan = scan_r(sym);
  const std::int64_t by_cube = centre_cube_r(lat, sym.kappa);
  sym.centre_r = by_cube;
  // A J-invariant component need not contain the centre once H^1 appears
  // (an annulus around -kappa/2), so the two values are compared only when
  // every sublevel set has vanishing H^1.
  bool h1_free = true;
  if (analysis.max_q() >= 1) {
    for (std::int64_t n = root.n_min; n <= analysis.n_top(); ++n) h1_free = h1_free && analysis.betti().at(n, 1) == 0;
  }
  if (h1_free && by_scan != by_cube) {
    throw InternalMismatch("parity invariant disagrees: component scan gives " +
                           std::to_string(by_scan) + ", centre cube gives " + std::to_string(by_cube));
  }
  sym.r = by_scan;
  sym.rho = Rational(static_cast<long>(sym.r)) + sigma_shift(lat.ell(), lat.form());
  sym.rho.canonicalize();
  return sym;
}

std::int64_t centre_cube_r(const WeightedLattice& lat, const std::vector<std::int64_t>& kappa) {
  const std::size_t s = lat.dim();
  Point base(s);
  std::vector<std::size_t> odd;
  for (std::size_t i = 0; i < s; ++i) {
    // floor(-kappa_i / 2)
    std::int64_t v = -kappa[i];
    base[i] = static_cast<Coord>(v >= 0 ? v / 2 : -((-v + 1) / 2));
    if (kappa[i] % 2 != 0) odd.push_back(i);
  }
  if (odd.size() > 30) throw CapacityExceeded("centre cube has too many vertices");
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << odd.size()); ++mask) {
    Point x(base);
    for (std::size_t b = 0; b < odd.size(); ++b) {
      if ((mask >> b) & 1U) ++x[odd[b]];
    }
    best = std::max(best, lat.weight(x));
  }
  return 2 * best;
}

std::int64_t scan_r(const SymmetryData& sym) {
  for (const auto& l : sym.levels) {
    if (l.fixed) return 2 * l.level;
  }
  throw InternalMismatch("no J-invariant component up to stabilization");
}

DerivedModule derived_cohomology(const SymmetryData& sym, const GradedRoot& root) {
  DerivedModule out;
  out.n_min = root.n_min;
  out.r = sym.r;
  for (std::int64_t n = root.n_min; n <= root.n_stab; ++n) out.ranks.push_back(sym.fixed_rank(n));
  out.single_tower = true;
  for (std::int64_t n = root.n_min; n <= root.n_stab; ++n) {
    const std::size_t want = 2 * n >= out.r ? 1 : 0;
    if (out.ranks[static_cast<std::size_t>(n - root.n_min)] != want) out.single_tower = false;
  }
  return out;
}

H1Symmetry h1_symmetry(const LatticeAnalysis& analysis, const std::vector<std::int64_t>& kappa,
                       std::int64_t n) {
  const CubicalComplex& cx = analysis.complex();
  const PointSet& pts = analysis.points();
  const std::size_t s = pts.dim();
  const std::size_t np = analysis.prefix(n);
  const auto& edges = cx.cells(1);

  // Spanning forest by BFS over edges of weight <= n.
  std::vector<std::int64_t> parent_edge(np, -1);
  std::vector<std::int64_t> parent(np, -1);
  std::vector<char> seen(np, 0);
  std::vector<char> tree(edges.size(), 0);
  auto edge_index = [&](std::uint32_t base, std::size_t j) {
    return cx.find(base, std::uint64_t{1} << j);
  };
  for (std::size_t start = 0; start < np; ++start) {
    if (seen[start]) continue;
    seen[start] = 1;
    std::vector<std::size_t> queue{start};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t p = queue[qi];
      for (std::size_t j = 0; j < s; ++j) {
        for (int sign : {+1, -1}) {
          std::int64_t q = cx.step(static_cast<std::uint32_t>(p), j, sign);
          if (q < 0 || static_cast<std::size_t>(q) >= np || seen[static_cast<std::size_t>(q)]) continue;
          std::uint32_t base = static_cast<std::uint32_t>(sign > 0 ? p : static_cast<std::size_t>(q));
          std::int64_t e = edge_index(base, j);
          seen[static_cast<std::size_t>(q)] = 1;
          parent[static_cast<std::size_t>(q)] = static_cast<std::int64_t>(p);
          parent_edge[static_cast<std::size_t>(q)] = e;
          tree[static_cast<std::size_t>(e)] = 1;
          queue.push_back(static_cast<std::size_t>(q));
        }
      }
    }
  }
  std::vector<std::int64_t> column(edges.size(), -1);
  std::size_t nontree = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].weight <= n && !tree[e]) column[e] = static_cast<std::int64_t>(nontree++);
  }
  H1Symmetry out;
  if (nontree == 0) return out;

  const std::size_t words = (nontree + 63) / 64;
  auto set_bit = [&](std::vector<std::uint64_t>& v, std::int64_t e) {
    std::int64_t c = column[static_cast<std::size_t>(e)];
    if (c >= 0) v[static_cast<std::size_t>(c) / 64] ^= std::uint64_t{1} << (c % 64);
  };
  Gf2Basis basis(nontree);
  // Square boundaries.
  if (cx.max_dim() < 2) throw InternalMismatch("H^1 needs the 2-cells of the complex");
  for (const Cell& sq : cx.cells(2)) {
    if (sq.weight > n) continue;
    std::vector<std::uint64_t> v(words, 0);
    for (std::size_t j = 0; j < s; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      if (!(sq.mask & bit)) continue;
      const std::uint64_t other = sq.mask & ~bit;
      const std::size_t i = static_cast<std::size_t>(std::countr_zero(other));
      // edges in direction i at base and at base + e_j
      set_bit(v, edge_index(sq.base, i));
      set_bit(v, edge_index(static_cast<std::uint32_t>(cx.step(sq.base, j, +1)), i));
    }
    basis.insert(std::move(v));
  }
  const std::size_t rank_p = basis.rank();
  out.h1 = nontree - rank_p;

  // (1 + J) applied to each fundamental cycle, projected to non-tree edges.
  auto reflect_edge = [&](std::size_t e) -> std::int64_t {
    const Cell& c = edges[e];
    const std::size_t j = static_cast<std::size_t>(std::countr_zero(c.mask));
    Point jb = reflect(pts.point_vector(c.base), kappa);
    jb[j] -= 1;
    std::size_t b = pts.find(jb);
    if (b == PointSet::npos) throw InternalMismatch("reflected edge leaves the slice");
    return edge_index(static_cast<std::uint32_t>(b), j);
  };
  std::vector<std::int64_t> path_edges;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (column[e] < 0) continue;
    std::vector<std::uint64_t> v(words, 0);
    set_bit(v, static_cast<std::int64_t>(e));
    const Cell& c = edges[e];
    const std::size_t j = static_cast<std::size_t>(std::countr_zero(c.mask));
    path_edges.clear();
    path_edges.push_back(static_cast<std::int64_t>(e));
    for (std::int64_t p : {static_cast<std::int64_t>(c.base), cx.step(c.base, j, +1)}) {
      while (parent[static_cast<std::size_t>(p)] >= 0) {
        path_edges.push_back(parent_edge[static_cast<std::size_t>(p)]);
        p = parent[static_cast<std::size_t>(p)];
      }
    }
    for (std::int64_t pe : path_edges) set_bit(v, reflect_edge(static_cast<std::size_t>(pe)));
    basis.insert(std::move(v));
  }
  out.rank_one_plus_j = basis.rank() - rank_p;
  return out;
}

std::vector<std::pair<std::int64_t, std::size_t>> derived_total(const LatticeAnalysis& analysis,
                                                                const SymmetryData& sym) {
  std::vector<std::pair<std::int64_t, std::size_t>> out;
  for (std::int64_t n = analysis.n_min(); n <= analysis.n_stab(); ++n) {
    H1Symmetry h = h1_symmetry(analysis, sym.kappa, n);
    if (h.h1 != analysis.betti().at(n, 1)) {
      throw InternalMismatch("H^1 rank differs between persistence and the J computation");
    }
    if (h.derived() > 0) out.emplace_back(2 * n - 1, h.derived());
    if (sym.fixed_rank(n) > 0) out.emplace_back(2 * n, sym.fixed_rank(n));
  }
  return out;
}

}  // namespace latticeroot
