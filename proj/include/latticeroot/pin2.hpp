#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latticeroot/exact.hpp"
#include "latticeroot/graded_root.hpp"
#include "latticeroot/module.hpp"
#include "latticeroot/symmetry.hpp"

namespace latticeroot {

struct CorrectionTerms {
  Rational delta, rho;
  std::optional<Rational> mubar;
  Rational a, b, c;
  Rational alpha, beta, gamma;

  /// rho == 2 mubar, when mubar is known.
  std::optional<bool> rho_matches_mubar() const;
  nlohmann::json to_json() const;
};

/// a = rho, b = rho + 1, c from the residue of 2 delta - rho mod 4.
CorrectionTerms correction_terms(const Rational& rho, const Rational& delta,
                                 const std::optional<Rational>& mubar = std::nullopt);

/// Towers given directly (used when they come from the Gysin sequence).
CorrectionTerms correction_terms_from_towers(const Rational& a, const Rational& b, const Rational& c,
                                             const Rational& rho, const Rational& delta,
                                             const std::optional<Rational>& mubar = std::nullopt);

struct QMap {
  Rational source, target;
  std::size_t rank = 0;
};

struct PinModule {
  Rational a, b, c;  // V-tower bottoms
  std::vector<std::pair<Rational, std::size_t>> finite;
  std::vector<QMap> q_maps;  // empty when only the group structure is known
  RankProfile ranks;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// HS for graphs with at most one bad vertex, from the J-action on the root.
PinModule hs_module_one_bad(const GradedRoot& root, const SymmetryData& sym, const Rational& sigma);

/// Multiplicities of the three elementary Gysin summands, indexed by the
/// grading of their lowest class.
struct GysinDecomposition {
  RankProfile i0, i1, i2;

  bool operator==(const GysinDecomposition& other) const;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

struct GysinRanks {
  RankProfile hm, a1, a2;
};

/// Re-express a profile over another origin in the same integral class.
RankProfile rebase(const RankProfile& p, const Rational& origin);

GysinRanks reconstruct(const GysinDecomposition& d);

/// Recovers the summand multiplicities from HM, A' and A'' ranks.
/// Throws InconsistentRanks when no decomposition exists.
GysinDecomposition gysin_decompose(const RankProfile& hm, const RankProfile& a1, const RankProfile& a2);

/// The unique A'' compatible with HM and A', or Ambiguous.
RankProfile force_second_derived(const RankProfile& hm, const RankProfile& a1);

/// HS ranks determined by a decomposition.
RankProfile hs_ranks(const GysinDecomposition& d);

/// Tower bottoms (a, b, c) read off the Gysin sequence. fixed(g) tells whether
/// the HM tower class at even grading g is J-invariant.
struct TowerInput {
  Rational sigma;
  Rational two_delta;
  // F-rank per lattice level, levels below first are 0, above last are 1.
  std::int64_t first_level = 0;
  std::vector<std::size_t> fixed;
};

std::array<Rational, 3> towers_from_gysin(const GysinDecomposition& d, const TowerInput& in);

/// Subtracts the three V-towers from a rank profile; throws if something
/// infinite or negative remains.
std::vector<std::pair<Rational, std::size_t>> finite_part(const RankProfile& ranks, const Rational& a,
                                                          const Rational& b, const Rational& c);

struct PipelineFlags {
  bool assume_conjecture = false;
};

struct PinReport {
  CorrectionTerms terms;
  PinModule hs;
  GradedModule hm;
  RankProfile a1, a2;
  std::optional<GysinDecomposition> gysin;
  bool conjecture_gated = false;

  nlohmann::json to_json() const;
};

/// HM ranks, A' from the J-action (even part from H^0, odd part from the
/// lattice derived groups of H^1), forced A'', decomposition and HS.
PinReport two_bad_pipeline(const LatticeAnalysis& analysis, const SymmetryData& sym, const Rational& sigma,
                           const PipelineFlags& flags, const std::optional<Rational>& mubar = std::nullopt);

/// Entry point for at most one bad vertex: HS from the root, cross-checked
/// against the Gysin route.
PinReport one_bad_pipeline(const LatticeAnalysis& analysis, const SymmetryData& sym, const Rational& sigma,
                           const std::optional<Rational>& mubar = std::nullopt);

}  // namespace latticeroot
