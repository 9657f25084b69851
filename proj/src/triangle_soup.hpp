#pragma once

// Mutable triangle list with a directed-edge index; the working
// representation for Delaunay construction and edge flips. Converted to an
// immutable Mesh once finished.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <unordered_map>
#include <vector>

#include "celestial/geometry.hpp"
#include "celestial/predicates.hpp"

namespace celestial::detail {

class TriangleSoup {
 public:
  using Tri = std::array<std::uint32_t, 3>;

  struct EdgeRef {
    std::uint32_t tri;
    std::uint32_t local;  // edge (v[local], v[local + 1])
  };

  explicit TriangleSoup(std::span<const Point> points) : points_(points) {}

  std::span<const Point> points() const { return points_; }
  const std::vector<Tri>& triangles() const { return tris_; }

  void add(Tri t) {
    const auto id = static_cast<std::uint32_t>(tris_.size());
    tris_.push_back(t);
    index(id);
  }

  std::optional<EdgeRef> find(std::uint32_t u, std::uint32_t v) const {
    auto it = edges_.find(key(u, v));
    if (it == edges_.end()) return std::nullopt;
    return it->second;
  }

  /// Vertex opposite the directed edge u->v in its triangle.
  std::uint32_t opposite(EdgeRef r) const { return tris_[r.tri][(r.local + 2) % 3]; }

  /// Both sides exist and the quadrilateral around u-v is strictly convex.
  bool flippable(std::uint32_t u, std::uint32_t v) const {
    const auto r1 = find(u, v);
    const auto r2 = find(v, u);
    if (!r1 || !r2) return false;
    const std::uint32_t c = opposite(*r1);
    const std::uint32_t d = opposite(*r2);
    return orient(points_[c], points_[u], points_[d]) == Orientation::Left &&
           orient(points_[d], points_[v], points_[c]) == Orientation::Left;
  }

  /// Replaces triangles (u, v, c) and (v, u, d) by (u, d, c) and (d, v, c).
  /// Returns the new diagonal's endpoints (c, d).
  std::pair<std::uint32_t, std::uint32_t> flip(std::uint32_t u, std::uint32_t v) {
    const EdgeRef r1 = *find(u, v);
    const EdgeRef r2 = *find(v, u);
    const std::uint32_t c = opposite(r1);
    const std::uint32_t d = opposite(r2);
    unindex(r1.tri);
    unindex(r2.tri);
    tris_[r1.tri] = {u, d, c};
    tris_[r2.tri] = {d, v, c};
    index(r1.tri);
    index(r2.tri);
    return {c, d};
  }

 private:
  static std::uint64_t key(std::uint32_t u, std::uint32_t v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  void index(std::uint32_t t) {
    for (std::uint32_t j = 0; j < 3; ++j) {
      edges_[key(tris_[t][j], tris_[t][(j + 1) % 3])] = EdgeRef{t, j};
    }
  }

  void unindex(std::uint32_t t) {
    for (std::uint32_t j = 0; j < 3; ++j) edges_.erase(key(tris_[t][j], tris_[t][(j + 1) % 3]));
  }

  std::span<const Point> points_;
  std::vector<Tri> tris_;
  std::unordered_map<std::uint64_t, EdgeRef> edges_;
};

}  // namespace celestial::detail
