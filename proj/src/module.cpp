#include "latticeroot/module.hpp"

#include <algorithm>
#include <sstream>

#include "latticeroot/errors.hpp"

namespace latticeroot {

std::int64_t mod4(std::int64_t k) { return ((k % 4) + 4) % 4; }

std::int64_t RankProfile::at(std::int64_t k) const {
  if (k >= tail_start) return tail[static_cast<std::size_t>(mod4(k))];
  auto it = head.find(k);
  return it == head.end() ? 0 : it->second;
}

void RankProfile::set(std::int64_t k, std::int64_t value) {
  if (k >= tail_start) throw InternalMismatch("cannot set a tail offset directly");
  if (value == 0) {
    head.erase(k);
  } else {
    head[k] = value;
  }
}

std::int64_t RankProfile::lowest() const {
  for (const auto& [k, v] : head) {
    if (v != 0) return k;
  }
  return tail_start;
}

void RankProfile::normalize() {
  for (auto it = head.begin(); it != head.end();) {
    it = it->second == 0 ? head.erase(it) : std::next(it);
  }
  if (tail_zero()) {
    tail_start = head.empty() ? 0 : head.rbegin()->first + 1;
    return;
  }
  while (at(tail_start - 1) == tail[static_cast<std::size_t>(mod4(tail_start - 1))]) {
    --tail_start;
    head.erase(tail_start);
  }
}

bool RankProfile::operator==(const RankProfile& other) const {
  Rational shift = other.origin - origin;
  shift.canonicalize();
  if (!is_integer(shift)) return false;
  const std::int64_t d = to_int64(shift.get_num());
  // this->at(k) must equal other.at(k - d)
  const std::int64_t lo = std::min(lowest(), other.lowest() + d) - 1;
  const std::int64_t hi = std::max(tail_start, other.tail_start + d) + 8;
  for (std::int64_t k = lo; k <= hi; ++k) {
    if (at(k) != other.at(k - d)) return false;
  }
  return true;
}

nlohmann::json RankProfile::to_json() const {
  nlohmann::json h = nlohmann::json::array();
  for (const auto& [k, v] : head) {
    if (v != 0) h.push_back({to_string(origin + Rational(static_cast<long>(k))), v});
  }
  nlohmann::json t = nlohmann::json::array();
  for (std::int64_t k = tail_start; k < tail_start + 4; ++k) {
    t.push_back({to_string(origin + Rational(static_cast<long>(k))), at(k)});
  }
  return {{"head", h}, {"periodic_from", t}};
}

std::vector<std::pair<Rational, std::size_t>> GradedModule::finite() const {
  std::map<Rational, std::size_t> acc;
  for (const auto& c : chains) {
    for (std::size_t i = 0; i < c.length; ++i) acc[c.bottom + Rational(static_cast<long>(2 * i))] += 1;
  }
  for (const auto& [g, r] : odd) acc[g] += r;
  return {acc.begin(), acc.end()};
}

RankProfile GradedModule::ranks() const {
  RankProfile p;
  if (!towers.empty()) {
    p.origin = towers.front();
  } else if (!chains.empty()) {
    p.origin = chains.front().bottom;
  } else if (!odd.empty()) {
    p.origin = odd.front().first;
  } else {
    p.origin = 0;
  }
  auto offset = [&](const Rational& g) {
    Rational d = g - p.origin;
    d.canonicalize();
    if (!is_integer(d)) throw InternalMismatch("module gradings are not in one integral class");
    return to_int64(d.get_num());
  };
  std::int64_t top = 0;
  for (const auto& [g, r] : finite()) top = std::max(top, offset(g) + 1);
  for (const auto& t : towers) top = std::max(top, offset(t) + 1);
  p.tail_start = top;
  for (const auto& [g, r] : finite()) p.head[offset(g)] += static_cast<std::int64_t>(r);
  for (const auto& t : towers) {
    const std::int64_t o = offset(t);
    for (std::int64_t k = o; k < top; k += 2) p.head[k] += 1;
    for (std::int64_t k = top; k < top + 4; ++k) {
      if (mod4(k - o) % 2 == 0) p.tail[static_cast<std::size_t>(mod4(k))] += 1;
    }
  }
  p.normalize();
  return p;
}

nlohmann::json GradedModule::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& g : towers) t.push_back(to_string(g));
  nlohmann::json f = nlohmann::json::array();
  for (const auto& [g, r] : finite()) f.push_back({to_string(g), r});
  nlohmann::json ch = nlohmann::json::array();
  for (const auto& c : chains) ch.push_back({{"bottom", to_string(c.bottom)}, {"length", c.length}});
  return {{"towers", t}, {"finite", f}, {"u_chains", ch}};
}

std::string GradedModule::to_text() const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&]() {
    if (!first) os << " + ";
    first = false;
  };
  for (const auto& g : towers) {
    sep();
    os << "U+(" << to_string(g) << ")";
  }
  for (const auto& [g, r] : finite()) {
    sep();
    if (r > 1) os << r;
    os << "F(" << to_string(g) << ")";
  }
  if (first) os << "0";
  return os.str();
}

GradedModule hm_module(const GradedRoot& root,
                       const std::vector<std::pair<std::int64_t, std::size_t>>& h1_by_level,
                       const Rational& sigma) {
  GradedModule m;
  if (root.components(root.n_stab) != 1) {
    throw StabilizationNotReached("root has several components at its top level");
  }
  m.towers.push_back(Rational(static_cast<long>(2 * root.n_min)) + sigma);
  m.towers.back().canonicalize();
  for (const auto& bar : root.bars()) {
    UChain c;
    c.bottom = Rational(static_cast<long>(2 * bar.birth)) + sigma;
    c.bottom.canonicalize();
    c.length = static_cast<std::size_t>(bar.death - bar.birth);
    m.chains.push_back(c);
  }
  for (const auto& [level, rank] : h1_by_level) {
    if (rank == 0) continue;
    Rational g = Rational(static_cast<long>(2 * level - 1)) + sigma;
    g.canonicalize();
    m.odd.emplace_back(g, rank);
  }
  return m;
}

}  // namespace latticeroot
