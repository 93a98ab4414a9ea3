#include "latticeroot/spinc.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "latticeroot/errors.hpp"
#include "latticeroot/gf2.hpp"
#include "latticeroot/lattice.hpp"
#include "latticeroot/smith.hpp"

namespace latticeroot {

namespace {

nlohmann::json int_array(const std::vector<std::int64_t>& v) {
  nlohmann::json j = nlohmann::json::array();
  for (auto x : v) j.push_back(x);
  return j;
}

std::vector<Integer> integer_entries(const IntersectionForm& form) {
  std::vector<Integer> out;
  for (auto e : form.entries()) out.emplace_back(static_cast<long>(e));
  return out;
}

}  // namespace

nlohmann::json SpinCOrbit::to_json() const {
  return {{"orbit_index", orbit_index},
          {"representative", int_array(representative)},
          {"self_conjugate", self_conjugate},
          {"k_square", to_string(k_square)},
          {"sigma", to_string(sigma)}};
}

nlohmann::json WuData::to_json() const {
  nlohmann::json w_json = nlohmann::json::array();
  for (auto b : w) w_json.push_back(static_cast<int>(b));
  return {{"w", w_json}, {"mubar", to_string(mubar)}, {"wu_set", int_array(wu_set)}};
}

void require_characteristic(const CharVector& ell, const IntersectionForm& form) {
  if (ell.size() != form.size()) {
    throw NotCharacteristic("vector length " + std::to_string(ell.size()) +
                            " does not match the form size " + std::to_string(form.size()));
  }
  for (std::size_t v = 0; v < ell.size(); ++v) {
    if ((ell[v] - form(v, v)) % 2 != 0) {
      throw NotCharacteristic("entry " + std::to_string(v) + " has the wrong parity");
    }
  }
}

CharVector canonical_class(const IntersectionForm& form) {
  CharVector ell(form.size());
  for (std::size_t v = 0; v < form.size(); ++v) ell[v] = -form(v, v) - 2;
  return ell;
}

std::vector<Rational> kappa(const CharVector& ell, const IntersectionForm& form) {
  RationalMatrix inv = form.inverse();
  const std::size_t s = form.size();
  std::vector<Rational> out(s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) out[i] += inv(i, j) * static_cast<long>(ell[j]);
    out[i].canonicalize();
  }
  return out;
}

std::vector<std::int64_t> integral_kappa(const CharVector& ell, const IntersectionForm& form) {
  std::vector<std::int64_t> out;
  for (const auto& q : kappa(ell, form)) {
    if (!is_integer(q)) throw NotSelfConjugate("orbit is not self-conjugate");
    out.push_back(to_int64(q.get_num()));
  }
  return out;
}

Rational k_square(const CharVector& ell, const IntersectionForm& form) {
  auto kp = kappa(ell, form);
  Rational out = 0;
  for (std::size_t i = 0; i < ell.size(); ++i) out += kp[i] * static_cast<long>(ell[i]);
  out.canonicalize();
  return out;
}

Rational sigma_shift(const CharVector& ell, const IntersectionForm& form) {
  Rational out = -(Rational(static_cast<long>(form.size())) + k_square(ell, form)) / 4;
  out.canonicalize();
  return out;
}

bool is_same_orbit(const CharVector& a, const CharVector& b, const IntersectionForm& form) {
  require_characteristic(a, form);
  require_characteristic(b, form);
  CharVector diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = b[i] - a[i];
  for (const auto& q : kappa(diff, form)) {
    Rational half = q / 2;
    half.canonicalize();
    if (!is_integer(half)) return false;
  }
  return true;
}

namespace {

CharVector canonical_in(const WeightedLattice& lat) {
  const IntersectionForm& form = lat.form();
  const CharVector& ell = lat.ell();
  const std::int64_t n = lat.minimum_level();
  const std::size_t s = form.size();
  std::optional<CharVector> best;
  lat.enumerate(n, [&](const Coord* x, std::int64_t) {
    CharVector cand(ell);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) cand[i] += 2 * form(i, j) * x[j];
    }
    if (!best || cand < *best) best = std::move(cand);
  });
  return *best;
}

}  // namespace

CharVector canonical_representative(const CharVector& ell, const IntersectionForm& form) {
  require_characteristic(ell, form);
  return canonical_in(WeightedLattice(form, ell));
}

std::vector<SpinCOrbit> enumerate_orbits(const IntersectionForm& form) {
  if (!form.is_negative_definite()) throw NotDefinite("intersection form is not negative definite");
  const std::size_t s = form.size();
  SmithForm snf = smith_normal_form(integer_entries(form), s);
  Integer total = 1;
  for (const auto& d : snf.d) total *= d;
  if (total > 1000000) {
    throw CapacityExceeded("too many spin-c structures to enumerate: " + total.get_str());
  }
  // Cosets of Z^s / M Z^s are U^{-1} y with 0 <= y_i < d_i.
  std::vector<std::int64_t> y(s, 0);
  std::vector<CharVector> reps;
  CharVector diag(s);
  for (std::size_t i = 0; i < s; ++i) diag[i] = form(i, i);
  const WeightedLattice base(form, diag);
  for (;;) {
    CharVector ell(s);
    for (std::size_t i = 0; i < s; ++i) {
      Integer t = 0;
      for (std::size_t j = 0; j < s; ++j) t += snf.u_inverse[i * s + j] * static_cast<long>(y[j]);
      ell[i] = form(i, i) + 2 * to_int64(t);
    }
    reps.push_back(canonical_in(base.with_ell(std::move(ell))));
    std::size_t k = 0;
    while (k < s) {
      if (++y[k] < snf.d[k]) break;
      y[k] = 0;
      ++k;
    }
    if (k == s) break;
  }
  std::sort(reps.begin(), reps.end());
  if (std::adjacent_find(reps.begin(), reps.end()) != reps.end()) {
    throw InternalMismatch("two residue classes share a canonical representative");
  }
  std::vector<SpinCOrbit> out;
  for (std::size_t idx = 0; idx < reps.size(); ++idx) {
    const WeightedLattice lat = base.with_ell(reps[idx]);
    SpinCOrbit o;
    o.representative = reps[idx];
    o.orbit_index = idx;
    auto kp = lat.kappa();
    o.self_conjugate = std::all_of(kp.begin(), kp.end(), [](const Rational& q) { return is_integer(q); });
    o.k_square = lat.k_square();
    o.sigma = -(Rational(static_cast<long>(s)) + o.k_square) / 4;
    o.sigma.canonicalize();
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> wu_candidates_brute_force(const IntersectionForm& form) {
  const std::size_t s = form.size();
  if (s > 24) throw CapacityExceeded("brute-force Wu search limited to 24 vertices");
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < s && ok; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < s; ++j) {
        if ((mask >> j) & 1U) acc += form(i, j);
      }
      ok = ((acc - form(i, i)) % 2) == 0;
    }
    if (!ok) continue;
    std::vector<std::uint8_t> w(s);
    for (std::size_t j = 0; j < s; ++j) w[j] = (mask >> j) & 1U;
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> wu_candidates_linear(const IntersectionForm& form) {
  const std::size_t s = form.size();
  BitMatrix a(s, s);
  std::vector<std::uint8_t> rhs(s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) a.set(i, j, (form(i, j) & 1) != 0);
    rhs[i] = static_cast<std::uint8_t>(form(i, i) & 1);
  }
  auto sol = a.solve(rhs);
  std::vector<std::vector<std::uint8_t>> out;
  if (!sol) return out;
  const std::size_t k = sol->kernel.size();
  if (k > 20) throw CapacityExceeded("too many spin structures to list");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<std::uint8_t> w(sol->particular);
    for (std::size_t b = 0; b < k; ++b) {
      if ((mask >> b) & 1U) {
        for (std::size_t j = 0; j < s; ++j) w[j] ^= sol->kernel[b][j];
      }
    }
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

WuData wu_vector(const PlumbingGraph& graph, const SpinCOrbit& orbit) {
  if (!orbit.self_conjugate) throw NotSelfConjugate("Wu vectors exist only for self-conjugate orbits");
  IntersectionForm form(graph);
  const std::size_t s = form.size();
  auto candidates = s <= 20 ? wu_candidates_brute_force(form) : wu_candidates_linear(form);
  std::vector<std::vector<std::uint8_t>> matches;
  for (const auto& w : candidates) {
    CharVector ell(s, 0);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) ell[i] += form(i, j) * w[j];
    }
    if (is_same_orbit(ell, orbit.representative, form)) matches.push_back(w);
  }
  if (matches.empty()) throw NoWuRepresentative("no 0/1 vector represents this orbit");
  if (matches.size() > 1) throw InternalMismatch("orbit has more than one Wu vector");
  WuData out;
  out.w = matches.front();
  Integer w2 = 0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      if (out.w[i] && out.w[j]) w2 += form(i, j);
    }
  }
  const int signature = form.inertia().signature();
  out.mubar = (Rational(signature) - Rational(w2)) / 8;
  out.mubar.canonicalize();
  for (std::size_t v = 0; v < s; ++v) {
    if (!out.w[v]) continue;
    for (std::size_t u : graph.neighbors(v)) {
      if (out.w[u]) {
        throw InternalMismatch("Wu set contains adjacent vertices " + std::to_string(graph.id(v)) +
                               " and " + std::to_string(graph.id(u)));
      }
    }
    out.wu_set.push_back(graph.id(v));
  }
  return out;
}

}  // namespace latticeroot
