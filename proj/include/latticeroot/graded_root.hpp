#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticeroot/cubical.hpp"
#include "latticeroot/lattice.hpp"

namespace latticeroot {

/// One component of S_n.
struct RootNode {
  std::size_t min_point = 0;  // smallest point index in the component
  std::int64_t parent = -1;   // index at level n + 1, -1 at the top level
};

/// Merge tree of the sublevel sets from the minimal level to n_stab. Nodes
/// of a level are ordered by their smallest point index.
struct GradedRoot {
  std::int64_t n_min = 0;
  std::int64_t n_stab = 0;
  std::vector<std::vector<RootNode>> levels;  // [n - n_min]

  const std::vector<RootNode>& at(std::int64_t n) const {
    return levels[static_cast<std::size_t>(n - n_min)];
  }
  std::size_t components(std::int64_t n) const { return at(n).size(); }

  /// Finite bars [birth, death) by the elder rule, plus the stem birth.
  struct Bar {
    std::int64_t birth;
    std::int64_t death;
  };
  std::vector<Bar> bars() const;

  /// Level-preserving isomorphism invariant: equal strings iff the rooted
  /// leveled trees are isomorphic.
  std::string canonical_form() const;

  std::string to_dot(const std::string& name = "root") const;
  nlohmann::json to_json() const;
};

/// Builds a merge tree from per-level component counts of an interval
/// function (used by the fibre-minimum fast path).
GradedRoot root_from_sequence(const std::vector<std::int64_t>& values, std::int64_t n_min,
                              std::int64_t n_stab);

struct AnalysisOptions {
  std::size_t max_q = 2;
  std::optional<std::int64_t> max_level;
};

/// Sublevel sets of one weighted lattice up to one level past
/// stabilization: points, cubical complex, Betti numbers, root, and the
/// per-level component labelling of points.
class LatticeAnalysis {
 public:
  LatticeAnalysis(const WeightedLattice& lat, const AnalysisOptions& options);

  const WeightedLattice& lattice() const noexcept { return lat_; }
  const PointSet& points() const noexcept { return *points_; }
  const CubicalComplex& complex() const noexcept { return *complex_; }
  const BettiTable& betti() const noexcept { return betti_; }
  const GradedRoot& root() const noexcept { return root_; }
  std::int64_t n_min() const noexcept { return root_.n_min; }
  std::int64_t n_stab() const noexcept { return root_.n_stab; }
  /// Last level whose points were enumerated (n_stab + 1).
  std::int64_t n_top() const noexcept { return n_top_; }
  std::size_t max_q() const noexcept { return max_q_; }

  /// Number of points of weight <= n.
  std::size_t prefix(std::int64_t n) const;
  /// Component of point p in S_n (p must have weight <= n).
  std::uint32_t component(std::int64_t n, std::size_t p) const;

 private:
  void build_root();

  WeightedLattice lat_;
  std::size_t max_q_;
  std::unique_ptr<PointSet> points_;
  std::unique_ptr<CubicalComplex> complex_;
  BettiTable betti_;
  GradedRoot root_;
  std::int64_t n_top_ = 0;
  std::vector<std::vector<std::uint32_t>> labels_;  // [n - n_min][point]
};

/// tau(i) = min{w0(x) : x_{v0} = i} on a certified range of i.
struct TauProfile {
  std::size_t v0 = 0;
  std::int64_t first = 0;             // i of values[0]
  std::vector<std::int64_t> values;
  std::int64_t certified_level = 0;   // every i with tau(i) <= this is included
};

/// Vertex used by the fast path: the bad vertex if there is one, otherwise
/// a vertex of maximal degree (the centre of a star).
std::size_t tau_vertex(const PlumbingGraph& graph);

TauProfile tau_profile(const WeightedLattice& lat, std::size_t v0, std::int64_t level);

/// Merge tree of a tau profile from its minimum to the first level from
/// which the sublevel sets stay a single interval up to the certified level.
GradedRoot tau_root(const TauProfile& tau);

/// tau_root with the certified level raised until the profile stabilizes.
GradedRoot fast_graded_root(const WeightedLattice& lat, std::size_t v0);

}  // namespace latticeroot
