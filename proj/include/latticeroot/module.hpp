#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latticeroot/exact.hpp"
#include "latticeroot/graded_root.hpp"

namespace latticeroot {

/// Ranks over integer offsets from a rational origin: a finite head below
/// tail_start and a period-4 tail from tail_start upward.
struct RankProfile {
  Rational origin;
  std::map<std::int64_t, std::int64_t> head;  // offsets < tail_start
  std::int64_t tail_start = 0;
  std::array<std::int64_t, 4> tail{0, 0, 0, 0};

  std::int64_t at(std::int64_t k) const;
  void set(std::int64_t k, std::int64_t value);
  /// Lowest offset with a nonzero value (tail_start if none below).
  std::int64_t lowest() const;
  /// Largest offset that needs to be inspected before the tail takes over.
  std::int64_t horizon() const { return tail_start; }
  bool tail_zero() const { return tail == std::array<std::int64_t, 4>{0, 0, 0, 0}; }
  /// Lowers tail_start as far as possible and drops zero head entries.
  void normalize();

  bool operator==(const RankProfile& other) const;

  /// [[grading, rank], ...] for the head, plus the tail description.
  nlohmann::json to_json() const;
};

std::int64_t mod4(std::int64_t k);

/// Finite U-chain F[U]/U^length whose classes sit at bottom, bottom+2, ...
struct UChain {
  Rational bottom;
  std::size_t length = 1;
};

/// Graded F[U]-module: towers, a finite even part made of U-chains, and an
/// odd part given by ranks only.
struct GradedModule {
  std::vector<Rational> towers;
  std::vector<UChain> chains;
  std::vector<std::pair<Rational, std::size_t>> odd;

  /// Finite part as sorted (grading, rank) pairs, even and odd together.
  std::vector<std::pair<Rational, std::size_t>> finite() const;
  /// Full ranks, including towers, as a profile with origin at the
  /// lowest tower bottom's fractional class.
  RankProfile ranks() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Shifted H^0 (from the root) plus shifted H^1 ranks per level.
GradedModule hm_module(const GradedRoot& root,
                       const std::vector<std::pair<std::int64_t, std::size_t>>& h1_by_level,
                       const Rational& sigma);

}  // namespace latticeroot
