#include "latticeroot/pin2.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "latticeroot/errors.hpp"

namespace latticeroot {
namespace {

Rational rat(std::int64_t k) { return Rational(static_cast<long>(k)); }

std::int64_t offset_of(const Rational& g, const Rational& origin) {
  Rational d = g - origin;
  d.canonicalize();
  if (!is_integer(d)) throw InvalidInput("gradings " + to_string(g) + " and " + to_string(origin) +
                                         " are not in one integral class");
  return to_int64(d.get_num());
}

std::int64_t first_at_least(std::int64_t from, std::int64_t residue) {
  return from + mod4(residue - from);
}

// Values of a sequence on [lo, lo + size); zero below lo.
struct Window {
  std::int64_t lo = 0;
  std::vector<std::int64_t> v;

  std::int64_t operator()(std::int64_t k) const {
    if (k < lo) return 0;
    const auto i = static_cast<std::size_t>(k - lo);
    if (i >= v.size()) throw InternalMismatch("window index out of range");
    return v[i];
  }
  std::int64_t& at(std::int64_t k) { return v[static_cast<std::size_t>(k - lo)]; }
};

Window window_of(const RankProfile& p, std::int64_t lo, std::int64_t hi) {
  Window w{lo, std::vector<std::int64_t>(static_cast<std::size_t>(hi - lo), 0)};
  for (std::int64_t k = lo; k < hi; ++k) w.at(k) = p.at(k);
  return w;
}

// Head below tail_start, tail read from [tail_start, tail_start + 4).
RankProfile profile_from(const Rational& origin, const Window& w, std::int64_t tail_start) {
  RankProfile p;
  p.origin = origin;
  p.tail_start = tail_start;
  for (std::int64_t k = w.lo; k < tail_start; ++k) {
    if (w(k) != 0) p.head[k] = w(k);
  }
  for (std::int64_t k = tail_start; k < tail_start + 4; ++k) p.tail[static_cast<std::size_t>(mod4(k))] = w(k);
  p.normalize();
  return p;
}

std::string grading_label(const RankProfile& p, std::int64_t k) { return to_string(p.origin + rat(k)); }

}  // namespace

std::optional<bool> CorrectionTerms::rho_matches_mubar() const {
  if (!mubar) return std::nullopt;
  return rho == 2 * *mubar;
}

nlohmann::json CorrectionTerms::to_json() const {
  nlohmann::json j = {{"alpha", to_string(alpha)}, {"beta", to_string(beta)},
                      {"gamma", to_string(gamma)}, {"delta", to_string(delta)},
                      {"rho", to_string(rho)},
                      {"towers", {{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)}}}};
  j["mubar"] = mubar ? nlohmann::json(to_string(*mubar)) : nlohmann::json(nullptr);
  auto check = rho_matches_mubar();
  j["rho_equals_2mubar"] = check ? nlohmann::json(*check) : nlohmann::json(nullptr);
  return j;
}

CorrectionTerms correction_terms_from_towers(const Rational& a, const Rational& b, const Rational& c,
                                             const Rational& rho, const Rational& delta,
                                             const std::optional<Rational>& mubar) {
  CorrectionTerms t;
  t.delta = delta;
  t.rho = rho;
  t.mubar = mubar;
  t.a = a;
  t.b = b;
  t.c = c;
  t.alpha = a / 2;
  t.beta = (b - 1) / 2;
  t.gamma = (c - 2) / 2;
  for (Rational* q : {&t.alpha, &t.beta, &t.gamma}) q->canonicalize();
  if (!(t.alpha >= t.beta && t.beta >= t.gamma)) {
    throw InternalMismatch("correction terms violate alpha >= beta >= gamma");
  }
  return t;
}

CorrectionTerms correction_terms(const Rational& rho, const Rational& delta, const std::optional<Rational>& mubar) {
  Rational diff = 2 * delta - rho;
  diff.canonicalize();
  if (!is_integer(diff) || mpz_odd_p(diff.get_num_mpz_t())) {
    throw ParityMismatch("2 delta = " + to_string(Rational(2 * delta)) + " and rho = " + to_string(rho) +
                         " differ by " + to_string(diff) + ", not an even integer");
  }
  const Rational two_delta = 2 * delta;
  const Rational c = mod4(to_int64(diff.get_num())) == 0 ? Rational(two_delta + 2) : two_delta;
  return correction_terms_from_towers(rho, rho + 1, c, rho, delta, mubar);
}

nlohmann::json PinModule::to_json() const {
  nlohmann::json f = nlohmann::json::array();
  for (const auto& [g, r] : finite) f.push_back({to_string(g), r});
  nlohmann::json q = nlohmann::json::array();
  for (const auto& m : q_maps) q.push_back({{"from", to_string(m.source)}, {"to", to_string(m.target)}, {"rank", m.rank}});
  return {{"towers", {{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)}}},
          {"finite", f},
          {"q_maps", q},
          {"text", to_text()}};
}

std::string PinModule::to_text() const {
  std::ostringstream os;
  os << "V+(" << to_string(c) << ") + V+(" << to_string(b) << ") + V+(" << to_string(a) << ")";
  for (const auto& [g, r] : finite) {
    os << " + ";
    if (r > 1) os << r;
    os << "F(" << to_string(g) << ")";
  }
  return os.str();
}

std::vector<std::pair<Rational, std::size_t>> finite_part(const RankProfile& ranks, const Rational& a,
                                                          const Rational& b, const Rational& c) {
  const std::array<std::int64_t, 3> t{offset_of(a, ranks.origin), offset_of(b, ranks.origin),
                                      offset_of(c, ranks.origin)};
  const std::int64_t lo = std::min({ranks.lowest(), t[0], t[1], t[2]});
  const std::int64_t top = std::max({ranks.tail_start, t[0] + 1, t[1] + 1, t[2] + 1});
  std::vector<std::pair<Rational, std::size_t>> out;
  for (std::int64_t k = lo; k < top + 4; ++k) {
    std::int64_t v = ranks.at(k);
    for (std::int64_t o : t) {
      if (k >= o && mod4(k - o) == 0) --v;
    }
    if (v < 0) throw InconsistentRanks("V-tower does not fit the ranks at " + grading_label(ranks, k));
    if (v > 0 && k >= top) throw InternalMismatch("ranks are not three V-towers plus a finite part");
    if (v > 0) out.emplace_back(ranks.origin + rat(k), static_cast<std::size_t>(v));
  }
  return out;
}

PinModule hs_module_one_bad(const GradedRoot& root, const SymmetryData& sym, const Rational& sigma) {
  // Lattice level n sits at HS grading 2n + sigma; offsets are from sigma.
  const std::int64_t r_off = sym.r;
  auto pairs = [&](std::int64_t n) -> std::int64_t {
    return n > root.n_stab ? 0 : static_cast<std::int64_t>(sym.at(n).pairs.size());
  };
  auto fixed = [&](std::int64_t n) -> std::int64_t { return static_cast<std::int64_t>(sym.fixed_rank(n)); };
  const std::int64_t lo = 2 * root.n_min;
  const std::int64_t tail_start = 2 * root.n_stab + 2;
  Window w{lo, std::vector<std::int64_t>(static_cast<std::size_t>(tail_start + 4 - lo), 0)};
  for (std::int64_t n = root.n_min; 2 * n < tail_start + 4; ++n) {
    const std::int64_t e = pairs(n) + fixed(n);
    w.at(2 * n) = e;
    if (mod4(2 * n - r_off) == 0 && 2 * n + 1 < tail_start + 4) w.at(2 * n + 1) = fixed(n);
  }
  PinModule m;
  m.ranks = profile_from(sigma, w, tail_start);
  const Rational delta = (rat(2 * root.n_min) + sigma) / 2;
  const CorrectionTerms t = correction_terms(sym.rho, delta);
  m.a = t.a;
  m.b = t.b;
  m.c = t.c;
  m.finite = finite_part(m.ranks, m.a, m.b, m.c);

  // [r+2] -> [r+1]: ker(1+J) at n to H' at n-1; [r+1] -> [r]: H' at n into H^0/im(1+J) at n.
  for (std::int64_t n = root.n_min; n <= root.n_stab + 2; ++n) {
    const Rational g = rat(2 * n) + sigma;
    if (mod4(2 * n - r_off) == 2 && fixed(n) && fixed(n - 1)) m.q_maps.push_back({g, g - 1, 1});
    if (mod4(2 * n - r_off) == 0 && fixed(n)) m.q_maps.push_back({g + 1, g, 1});
  }
  return m;
}

RankProfile rebase(const RankProfile& p, const Rational& origin) {
  const std::int64_t d = offset_of(p.origin, origin);
  RankProfile out;
  out.origin = origin;
  out.tail_start = p.tail_start + d;
  for (const auto& [k, v] : p.head) out.head[k + d] = v;
  for (std::int64_t k = out.tail_start; k < out.tail_start + 4; ++k) {
    out.tail[static_cast<std::size_t>(mod4(k))] = p.tail[static_cast<std::size_t>(mod4(k - d))];
  }
  return out;
}

bool GysinDecomposition::operator==(const GysinDecomposition& other) const {
  return i0 == other.i0 && i1 == other.i1 && i2 == other.i2;
}

std::string GysinDecomposition::to_string() const {
  // (grading offset, summand type, family flag)
  struct Term {
    std::int64_t k;
    int type;
    bool family;
    Rational origin;
  };
  std::vector<Term> terms;
  const RankProfile* ps[3] = {&i0, &i1, &i2};
  for (int type = 0; type < 3; ++type) {
    const RankProfile& p = *ps[type];
    for (const auto& [k, v] : p.head) {
      for (std::int64_t i = 0; i < v; ++i) terms.push_back({k, type, false, p.origin});
    }
    for (std::int64_t r = 0; r < 4; ++r) {
      const std::int64_t v = p.tail[static_cast<std::size_t>(r)];
      const std::int64_t k = first_at_least(p.tail_start, r);
      for (std::int64_t i = 0; i < v; ++i) terms.push_back({k, type, true, p.origin});
    }
  }
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    if (x.family != y.family) return !x.family;
    const Rational gx = x.origin + rat(x.k), gy = y.origin + rat(y.k);
    if (gx != gy) return gx < gy;
    return x.type < y.type;
  });
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    const Term& t = terms[i];
    os << "I" << t.type << "[" << latticeroot::to_string(t.origin + rat(t.k));
    if (t.family) os << "+4n, n≥0";
    os << "]";
  }
  return os.str();
}

nlohmann::json GysinDecomposition::to_json() const {
  nlohmann::json j;
  const RankProfile* ps[3] = {&i0, &i1, &i2};
  for (int type = 0; type < 3; ++type) {
    const RankProfile& p = *ps[type];
    nlohmann::json list = nlohmann::json::array();
    for (const auto& [k, v] : p.head) {
      for (std::int64_t i = 0; i < v; ++i) list.push_back(latticeroot::to_string(p.origin + rat(k)));
    }
    for (std::int64_t r = 0; r < 4; ++r) {
      const std::int64_t k = first_at_least(p.tail_start, r);
      for (std::int64_t i = 0; i < p.tail[static_cast<std::size_t>(r)]; ++i) {
        list.push_back(latticeroot::to_string(p.origin + rat(k)) + "+4n");
      }
    }
    j["I" + std::to_string(type)] = list;
  }
  j["text"] = to_string();
  return j;
}

GysinRanks reconstruct(const GysinDecomposition& d) {
  const Rational origin = d.i0.origin;
  const RankProfile i1 = rebase(d.i1, origin), i2 = rebase(d.i2, origin);
  const std::int64_t lo = std::min({d.i0.lowest(), i1.lowest(), i2.lowest()});
  const std::int64_t ts = std::max({d.i0.tail_start, i1.tail_start, i2.tail_start}) + 2;
  const Window c0 = window_of(d.i0, lo, ts + 4), c1 = window_of(i1, lo, ts + 4), c2 = window_of(i2, lo, ts + 4);
  Window hm{lo, std::vector<std::int64_t>(c0.v.size())}, a1 = hm, a2 = hm;
  for (std::int64_t k = lo; k < ts + 4; ++k) {
    a2.at(k) = c2(k) + c2(k - 2);
    a1.at(k) = c1(k) + c1(k - 1) + a2(k);
    hm.at(k) = 2 * c0(k) + a1(k);
  }
  return {profile_from(origin, hm, ts), profile_from(origin, a1, ts), profile_from(origin, a2, ts)};
}

GysinDecomposition gysin_decompose(const RankProfile& hm_in, const RankProfile& a1_in, const RankProfile& a2_in) {
  const Rational origin = hm_in.origin;
  const RankProfile a1p = rebase(a1_in, origin), a2p = rebase(a2_in, origin);
  const std::int64_t lo = std::min({hm_in.lowest(), a1p.lowest(), a2p.lowest()});
  const std::int64_t ts = std::max({hm_in.tail_start, a1p.tail_start, a2p.tail_start});
  const std::int64_t hi = ts + 14;
  const Window hm = window_of(hm_in, lo, hi), a1 = window_of(a1p, lo, hi), a2 = window_of(a2p, lo, hi);
  Window c0{lo, std::vector<std::int64_t>(hm.v.size())}, c1 = c0, c2 = c0;
  for (std::int64_t k = lo; k < hi; ++k) {
    const std::string at = " at grading " + grading_label(hm_in, k);
    if (hm(k) < 0 || a1(k) < 0 || a2(k) < 0) throw InconsistentRanks("negative rank" + at);
    c2.at(k) = a2(k) - c2(k - 2);
    if (c2(k) < 0) throw InconsistentRanks("negative I2 multiplicity" + at);
    c1.at(k) = a1(k) - c2(k) - c2(k - 2) - c1(k - 1);
    if (c1(k) < 0) throw InconsistentRanks("negative I1 multiplicity" + at);
    const std::int64_t rest = hm(k) - c1(k) - c1(k - 1) - c2(k) - c2(k - 2);
    if (rest < 0 || rest % 2 != 0) {
      throw InconsistentRanks("HM rank leaves " + std::to_string(rest) + " for I0 summands" + at);
    }
    c0.at(k) = rest / 2;
  }
  for (std::int64_t k = ts + 2; k < ts + 6; ++k) {
    if (c0(k) != c0(k + 4) || c1(k) != c1(k + 4) || c2(k) != c2(k + 4)) {
      throw InconsistentRanks("summand multiplicities are not periodic above grading " +
                              grading_label(hm_in, ts));
    }
  }
  return {profile_from(origin, c0, ts + 2), profile_from(origin, c1, ts + 2), profile_from(origin, c2, ts + 2)};
}

RankProfile force_second_derived(const RankProfile& hm, const RankProfile& a1_in) {
  const Rational origin = hm.origin;
  const RankProfile a1 = rebase(a1_in, origin);
  const std::int64_t lo = std::min(hm.lowest(), a1.lowest());
  const std::int64_t ts = std::max(hm.tail_start, a1.tail_start);
  // Unknowns: c1(n) for lo <= n < ts, and a period-4 tail for n >= ts.
  std::vector<std::int64_t> bound;
  for (std::int64_t n = lo; n < ts + 4; ++n) {
    bound.push_back(std::min({a1.at(n), a1.at(n + 1), hm.at(n), hm.at(n + 1)}));
  }
  double combos = 1;
  for (std::int64_t b : bound) combos *= static_cast<double>(b + 1);
  if (combos > 2e6) throw CapacityExceeded("too many I1 placements to search when forcing A''");

  std::vector<std::int64_t> choice(bound.size(), 0);
  std::vector<RankProfile> found;
  const std::int64_t hi = ts + 6;
  while (true) {
    Window c1{lo, std::vector<std::int64_t>(static_cast<std::size_t>(hi - lo), 0)};
    for (std::int64_t n = lo; n < hi; ++n) {
      c1.at(n) = n < ts + 4 ? choice[static_cast<std::size_t>(n - lo)] : c1(n - 4);
    }
    bool periodic = true;
    for (std::int64_t n = ts; n < ts + 2; ++n) periodic = periodic && c1(n) == c1(n + 4);
    Window a2{lo, std::vector<std::int64_t>(c1.v.size(), 0)};
    bool ok = periodic;
    for (std::int64_t g = lo; ok && g < hi; ++g) {
      a2.at(g) = a1.at(g) - c1(g) - c1(g - 1);
      ok = a2(g) >= 0;
    }
    if (ok) {
      RankProfile cand = profile_from(origin, a2, ts + 1);
      try {
        gysin_decompose(hm, a1, cand);
        if (std::find(found.begin(), found.end(), cand) == found.end()) found.push_back(cand);
      } catch (const InconsistentRanks&) {
      }
    }
    std::size_t i = 0;
    while (i < choice.size() && choice[i] == bound[i]) choice[i++] = 0;
    if (i == choice.size()) break;
    ++choice[i];
  }
  if (found.empty()) throw InconsistentRanks("no Gysin decomposition is compatible with HM and A'");
  if (found.size() > 1) {
    throw Ambiguous(std::to_string(found.size()) + " different A'' profiles admit a Gysin decomposition");
  }
  return found.front();
}

RankProfile hs_ranks(const GysinDecomposition& d) {
  const Rational origin = d.i0.origin;
  const RankProfile i1 = rebase(d.i1, origin), i2 = rebase(d.i2, origin);
  const std::int64_t lo = std::min({d.i0.lowest(), i1.lowest(), i2.lowest()});
  const std::int64_t ts = std::max({d.i0.tail_start, i1.tail_start, i2.tail_start}) + 2;
  const Window c0 = window_of(d.i0, lo, ts + 4), c1 = window_of(i1, lo, ts + 4), c2 = window_of(i2, lo, ts + 4);
  Window hs{lo, std::vector<std::int64_t>(c0.v.size())};
  for (std::int64_t g = lo; g < ts + 4; ++g) {
    hs.at(g) = c0(g) + c1(g) + c1(g - 1) + c2(g) + c2(g - 1) + c2(g - 2);
  }
  return profile_from(origin, hs, ts);
}

std::array<Rational, 3> towers_from_gysin(const GysinDecomposition& d, const TowerInput& in) {
  const Rational origin = d.i0.origin;
  const RankProfile i1 = rebase(d.i1, origin), i2 = rebase(d.i2, origin);
  std::int64_t t = -1;
  for (std::int64_t r = 0; r < 4; ++r) {
    const std::int64_t v = i2.tail[static_cast<std::size_t>(r)];
    if (v == 0) continue;
    if (v > 1 || t >= 0) throw InconsistentRanks("expected exactly one infinite family of I2 summands");
    t = r;
  }
  if (t < 0) throw InconsistentRanks("no infinite family of I2 summands carries the U-tower");

  const std::int64_t kd = offset_of(in.two_delta, origin);
  const std::int64_t sig = offset_of(in.sigma, origin);
  const std::int64_t last_level = in.first_level + static_cast<std::int64_t>(in.fixed.size()) - 1;
  // F-rank of the tower class at offset k (lattice level (k - sig) / 2).
  auto f = [&](std::int64_t k) -> std::int64_t {
    if ((k - sig) % 2 != 0) throw InternalMismatch("tower class at an odd lattice grading");
    const std::int64_t n = (k - sig) / 2;
    if (n < in.first_level) return 0;
    if (n > last_level) return 1;
    return static_cast<std::int64_t>(in.fixed[static_cast<std::size_t>(n - in.first_level)]);
  };
  const std::int64_t horizon = std::max({i2.tail_start, i1.tail_start, d.i0.tail_start, sig + 2 * last_level, kd}) + 8;

  // a: lowest tower class of residue t not hit by the Gysin map from HS.
  std::int64_t a = -1;
  for (std::int64_t k = first_at_least(kd, t); k <= horizon; k += 4) {
    const std::int64_t extra = i1.at(k - 1) + i2.at(k - 2);
    if (extra > f(k)) throw InternalMismatch("Gysin image exceeds the J-invariant part at grading " +
                                             to_string(origin + rat(k)));
    const bool in_image = f(k) == 0 || extra >= 1;
    if (a < 0 && !in_image) a = k;
    if (a >= 0 && in_image) throw InternalMismatch("tower classes outside the Gysin image are not upward closed");
  }
  if (a < 0) throw InternalMismatch("no a-tower bottom found");

  std::int64_t b = -1;
  for (std::int64_t k = first_at_least(kd - 1, t + 1); k <= horizon; k += 4) {
    if (f(k + 1) == 1) {
      b = k;
      break;
    }
    if (i2.at(k) > 0) {
      throw Ambiguous("b-tower bottom is not determined by the Gysin sequence at grading " +
                      to_string(origin + rat(k)));
    }
  }
  if (b < 0) throw InternalMismatch("no b-tower bottom found");

  const std::int64_t c = first_at_least(kd, t + 2);
  return {origin + rat(a), origin + rat(b), origin + rat(c)};
}

nlohmann::json PinReport::to_json() const {
  nlohmann::json j = terms.to_json();
  j["hs"] = hs.to_json();
  j["finite"] = hs.to_json()["finite"];
  j["hm"] = hm.to_json();
  j["hm"]["text"] = hm.to_text();
  j["gysin"] = gysin ? gysin->to_json() : nlohmann::json(nullptr);
  j["a_prime"] = a1.to_json();
  j["a_double_prime"] = a2.to_json();
  j["conjecture_gated"] = conjecture_gated;
  return j;
}

PinReport two_bad_pipeline(const LatticeAnalysis& analysis, const SymmetryData& sym, const Rational& sigma,
                           const PipelineFlags& flags, const std::optional<Rational>& mubar) {
  if (analysis.max_q() < 1) throw InvalidInput("the Gysin route needs H^1 of the sublevel sets");
  const GradedRoot& root = analysis.root();
  PinReport rep;

  std::vector<std::pair<std::int64_t, std::size_t>> h1;
  bool odd = false;
  for (std::int64_t n = root.n_min; n <= root.n_stab; ++n) {
    const std::size_t r = analysis.betti().at(n, 1);
    h1.emplace_back(n, r);
    odd = odd || r > 0;
  }
  rep.hm = hm_module(root, h1, sigma);
  const RankProfile hm = rep.hm.ranks();

  if (odd && !flags.assume_conjecture) {
    throw ConjectureRequired("HM has an odd part; identifying A' there with the lattice derived groups "
                             "requires --assume-conjecture");
  }
  rep.conjecture_gated = odd;

  // A' over the origin sigma: 2n for H^0, 2n - 1 for H^1.
  const std::int64_t lo = 2 * root.n_min - 1;
  const std::int64_t ts = 2 * root.n_stab + 2;
  Window a1{lo, std::vector<std::int64_t>(static_cast<std::size_t>(ts + 4 - lo), 0)};
  for (std::int64_t n = root.n_min; 2 * n < ts + 4; ++n) a1.at(2 * n) = static_cast<std::int64_t>(sym.fixed_rank(n));
  if (odd) {
    for (std::int64_t n = root.n_min; n <= root.n_stab; ++n) {
      a1.at(2 * n - 1) = static_cast<std::int64_t>(h1_symmetry(analysis, sym.kappa, n).derived());
    }
  }
  rep.a1 = profile_from(sigma, a1, ts);
  rep.a2 = force_second_derived(hm, rep.a1);
  const GysinDecomposition d = gysin_decompose(hm, rep.a1, rep.a2);
  if (!(reconstruct(d).hm == hm)) throw InternalMismatch("Gysin decomposition does not reconstruct HM");
  rep.gysin = d;

  TowerInput in;
  in.sigma = sigma;
  in.two_delta = rat(2 * root.n_min) + sigma;
  in.first_level = root.n_min;
  for (std::int64_t n = root.n_min; n <= root.n_stab; ++n) in.fixed.push_back(sym.fixed_rank(n));
  const auto [a, b, c] = towers_from_gysin(d, in);

  rep.hs.a = a;
  rep.hs.b = b;
  rep.hs.c = c;
  rep.hs.ranks = hs_ranks(d);
  rep.hs.finite = finite_part(rep.hs.ranks, a, b, c);
  rep.terms = correction_terms_from_towers(a, b, c, sym.rho, in.two_delta / 2, mubar);
  return rep;
}

PinReport one_bad_pipeline(const LatticeAnalysis& analysis, const SymmetryData& sym, const Rational& sigma,
                           const std::optional<Rational>& mubar) {
  const GradedRoot& root = analysis.root();
  PinReport rep;
  rep.hs = hs_module_one_bad(root, sym, sigma);
  const Rational delta = (rat(2 * root.n_min) + sigma) / 2;
  rep.terms = correction_terms(sym.rho, delta, mubar);
  std::vector<std::pair<std::int64_t, std::size_t>> h1;
  if (analysis.max_q() >= 1) {
    for (std::int64_t n = root.n_min; n <= root.n_stab; ++n) h1.emplace_back(n, analysis.betti().at(n, 1));
  }
  rep.hm = hm_module(root, h1, sigma);
  if (analysis.max_q() >= 1) {
    // The Gysin route must land on the same module.
    PinReport g = two_bad_pipeline(analysis, sym, sigma, PipelineFlags{}, mubar);
    if (!(g.hs.ranks == rep.hs.ranks) || g.hs.a != rep.hs.a || g.hs.b != rep.hs.b || g.hs.c != rep.hs.c) {
      throw InternalMismatch("HS from the root disagrees with HS from the Gysin sequence");
    }
    rep.a1 = g.a1;
    rep.a2 = g.a2;
    rep.gysin = g.gysin;
  }
  return rep;
}

}  // namespace latticeroot
