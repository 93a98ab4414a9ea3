#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "latticeroot/errors.hpp"
#include "latticeroot/lattice.hpp"
#include "latticeroot/plumbing.hpp"

namespace testing_support {

using namespace latticeroot;

inline PlumbingGraph e8_graph() {
  // Arms of length 4, 2 and 1 off vertex 4.
  return PlumbingGraph({{0, -2}, {1, -2}, {2, -2}, {3, -2}, {4, -2}, {5, -2}, {6, -2}, {7, -2}},
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}});
}

inline PlumbingGraph figure3_graph() {
  return PlumbingGraph({{0, -13}, {1, -1}, {2, -1}, {3, -2}, {4, -2}, {5, -3}, {6, -3}},
                       {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {1, 5}, {2, 6}});
}

inline PlumbingGraph single_vertex(std::int64_t m) { return PlumbingGraph({{0, m}}, {}); }

/// Random tree with at most max_vertices vertices and at most max_bad bad
/// vertices whose form is negative definite.
inline PlumbingGraph random_tree(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_bad) {
  std::uniform_int_distribution<std::size_t> size_d(1, max_vertices);
  std::uniform_int_distribution<std::int64_t> weight_d(-6, -1);
  while (true) {
    const std::size_t n = size_d(rng);
    std::vector<Vertex> vs;
    std::vector<std::pair<std::int64_t, std::int64_t>> es;
    for (std::size_t i = 0; i < n; ++i) {
      vs.push_back({static_cast<std::int64_t>(i), weight_d(rng)});
      if (i > 0) {
        std::uniform_int_distribution<std::size_t> parent_d(0, i - 1);
        es.emplace_back(static_cast<std::int64_t>(parent_d(rng)), static_cast<std::int64_t>(i));
      }
    }
    PlumbingGraph g(vs, es);
    if (g.bad_vertices().size() > max_bad) continue;
    if (!IntersectionForm(g).is_negative_definite()) continue;
    return g;
  }
}

/// Random star: centre 0 with up to max_arms arms of length up to max_len,
/// arm decorations at most -2.
inline PlumbingGraph random_star(std::mt19937_64& rng, std::size_t max_arms, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> arms_d(1, max_arms), len_d(1, max_len);
  std::uniform_int_distribution<std::int64_t> arm_w(-5, -2);
  while (true) {
    const std::size_t arms = arms_d(rng);
    std::uniform_int_distribution<std::int64_t> centre_w(-static_cast<std::int64_t>(arms) - 2, -1);
    std::vector<Vertex> vs{{0, centre_w(rng)}};
    std::vector<std::pair<std::int64_t, std::int64_t>> es;
    std::int64_t next = 1;
    for (std::size_t a = 0; a < arms; ++a) {
      std::int64_t prev = 0;
      const std::size_t len = len_d(rng);
      for (std::size_t j = 0; j < len; ++j) {
        vs.push_back({next, arm_w(rng)});
        es.emplace_back(prev, next);
        prev = next++;
      }
    }
    PlumbingGraph g(vs, es);
    if (!IntersectionForm(g).is_negative_definite()) continue;
    return g;
  }
}

inline std::int64_t brute_weight(const IntersectionForm& m, const std::vector<std::int64_t>& ell,
                                 const std::vector<std::int64_t>& x) {
  std::int64_t q = 0, l = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    l += ell[i] * x[i];
    for (std::size_t j = 0; j < x.size(); ++j) q += x[i] * m(i, j) * x[j];
  }
  return -(q + l) / 2;
}

/// All x in the box [-radius, radius]^s with weight <= n.
inline std::set<std::vector<std::int64_t>> box_points(const IntersectionForm& m, const std::vector<std::int64_t>& ell,
                                                      std::int64_t n, std::int64_t radius) {
  const std::size_t s = m.size();
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(s, -radius);
  while (true) {
    if (brute_weight(m, ell, x) <= n) out.insert(x);
    std::size_t i = 0;
    while (i < s && x[i] == radius) x[i++] = -radius;
    if (i == s) break;
    ++x[i];
  }
  return out;
}

}  // namespace testing_support
