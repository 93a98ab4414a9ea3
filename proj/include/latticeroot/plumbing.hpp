#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latticeroot/exact.hpp"

namespace latticeroot {

struct Vertex {
  std::int64_t id = 0;
  std::int64_t weight = 0;
};

/// A decorated plumbing tree. Construction validates the tree invariants, so
/// every instance is a connected acyclic simple graph with distinct ids.
class PlumbingGraph {
 public:
  PlumbingGraph(std::vector<Vertex> vertices,
                std::vector<std::pair<std::int64_t, std::int64_t>> edges);

  static PlumbingGraph from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept {
    return edges_;
  }
  const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adjacency_[v];
  }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  std::int64_t weight(std::size_t v) const { return vertices_[v].weight; }
  std::int64_t id(std::size_t v) const { return vertices_[v].id; }
  std::size_t index_of(std::int64_t id) const;

  bool adjacent(std::size_t u, std::size_t v) const;
  bool is_bad(std::size_t v) const {
    return weight(v) > -static_cast<std::int64_t>(degree(v));
  }
  std::vector<std::size_t> bad_vertices() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// The symmetric intersection matrix of a plumbing, rows in vertex order.
class IntersectionForm {
 public:
  explicit IntersectionForm(const PlumbingGraph& graph);
  /// Any symmetric integer matrix; used for synthetic lattices in tests.
  IntersectionForm(std::size_t n, std::vector<std::int64_t> entries);

  std::size_t size() const noexcept { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return m_[i * n_ + j];
  }
  const std::vector<std::int64_t>& entries() const noexcept { return m_; }

  Integer determinant() const;
  Inertia inertia() const;
  bool is_negative_definite() const;
  RationalMatrix rational() const;
  /// Exact inverse; throws NotDefinite when singular.
  RationalMatrix inverse() const;

 private:
  std::size_t n_;
  std::vector<std::int64_t> m_;
};

struct ValidationReport {
  bool is_tree = true;
  bool is_negative_definite = false;
  std::vector<std::int64_t> bad_vertex_ids;
  int signature = 0;
  Integer determinant;

  nlohmann::json to_json() const;
};

ValidationReport validate(const PlumbingGraph& graph);

struct SeifertArm {
  std::int64_t alpha = 0;
  std::int64_t omega = 0;
};

struct SeifertData {
  std::int64_t b = 0;
  std::vector<SeifertArm> arms;

  static SeifertData from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Coefficients c_1, c_2, ... (all >= 2) with a/w = c_1 - 1/(c_2 - ...).
std::vector<std::int64_t> negative_continued_fraction(std::int64_t a,
                                                      std::int64_t w);

/// Star-shaped plumbing: centre id 0 with decoration -b, arm vertices
/// numbered consecutively outward, arm by arm.
PlumbingGraph from_seifert(const SeifertData& data);

/// Seifert invariants of the Brieskorn sphere Sigma(p, q, r) bounding the
/// negative definite star plumbing (orbifold Euler number -1/(pqr)).
SeifertData brieskorn(std::int64_t p, std::int64_t q, std::int64_t r);

}  // namespace latticeroot
