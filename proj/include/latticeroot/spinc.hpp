#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "latticeroot/exact.hpp"
#include "latticeroot/plumbing.hpp"

namespace latticeroot {

/// Characteristic vector in dual coordinates: ell_v = (k, e_v).
using CharVector = std::vector<std::int64_t>;

struct SpinCOrbit {
  CharVector representative;
  bool self_conjugate = false;
  std::size_t orbit_index = 0;
  Rational k_square;
  Rational sigma;

  nlohmann::json to_json() const;
};

struct WuData {
  std::vector<std::uint8_t> w;
  Rational mubar;
  std::vector<std::int64_t> wu_set;  // vertex ids

  nlohmann::json to_json() const;
};

void require_characteristic(const CharVector& ell, const IntersectionForm& form);

/// The canonical class, ell_v = -m_v - 2 (adjunction).
CharVector canonical_class(const IntersectionForm& form);

/// M^{-1} ell; integral exactly when the orbit is self-conjugate.
std::vector<Rational> kappa(const CharVector& ell, const IntersectionForm& form);
/// kappa as integers; throws NotSelfConjugate otherwise.
std::vector<std::int64_t> integral_kappa(const CharVector& ell, const IntersectionForm& form);

Rational k_square(const CharVector& ell, const IntersectionForm& form);
/// -(s + k^2) / 4.
Rational sigma_shift(const CharVector& ell, const IntersectionForm& form);

bool is_same_orbit(const CharVector& a, const CharVector& b, const IntersectionForm& form);

/// ell + 2 M x, where x minimises the weight function of ell (so k^2 is
/// maximal in the orbit), ties broken by the lexicographically smallest
/// result.
CharVector canonical_representative(const CharVector& ell, const IntersectionForm& form);

/// All |det M| orbits, sorted by canonical representative.
std::vector<SpinCOrbit> enumerate_orbits(const IntersectionForm& form);

/// 0/1 solutions w of M w = diag(M) (mod 2), by brute force over 2^s.
std::vector<std::vector<std::uint8_t>> wu_candidates_brute_force(const IntersectionForm& form);
/// The same set, from the GF(2) solution space.
std::vector<std::vector<std::uint8_t>> wu_candidates_linear(const IntersectionForm& form);

WuData wu_vector(const PlumbingGraph& graph, const SpinCOrbit& orbit);

}  // namespace latticeroot
