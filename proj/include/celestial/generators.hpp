#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "celestial/mesh.hpp"

namespace celestial {

struct BoundingBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 1.0;
  double ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

/// rows x cols pointy-top regular hexagons, odd rows shifted right by half a
/// cell. Vertex coordinates come from an integer lattice so shared corners
/// are bit-identical.
Mesh hex_grid(std::size_t rows, std::size_t cols, double edge_len);

/// Fills every pocket between the domain boundary and its convex hull with
/// triangles, so the result subdivides a convex region. Existing faces keep
/// their ids; the new triangles follow them.
Mesh close_convex_hull(const Mesh& m);

/// Delaunay triangulation by lexicographic incremental insertion with
/// Lawson flips and exact incircle tests. Cocircular quadrilaterals keep
/// the diagonal whose sorted endpoint-id pair is lexicographically smaller.
/// Vertex ids follow the input order.
Mesh delaunay_triangulate(std::span<const Point> points);

/// Applies up to k uniformly chosen flips of interior edges whose
/// quadrilateral is strictly convex. Stops early if no edge is flippable.
Mesh random_flip_perturb(const Mesh& triangulation, std::size_t k, std::uint64_t seed);

/// Recursive chord splitting of the box: each step picks a random face and
/// two of its perimeter edges. Chord ends land at a fresh point with
/// parameter in [0.1, 0.9] on boundary edges, and at an edge endpoint on
/// interior edges, so no neighbour gains a straight corner. Produces exactly
/// n_splits + 1 strictly convex faces.
Mesh chord_split_subdivision(std::size_t n_splits, std::uint64_t seed, BoundingBox bbox = {});

std::vector<Point> uniform_points(std::size_t n, std::uint64_t seed, BoundingBox bbox = {});

/// Uniform Delaunay mesh of n points in the unit square.
Mesh random_delaunay(std::size_t n, std::uint64_t seed);

/// Delaunay mesh of n uniform points followed by k random flips.
Mesh random_flipped(std::size_t n, std::size_t k, std::uint64_t seed);

BoundingBox bounding_box(const Mesh& m);

struct LoopSearchOptions {
  std::size_t max_meshes = 10000;
  std::uint64_t seed = 1;
  std::size_t points_per_mesh = 40;
  std::size_t flips_per_mesh = 200;
  std::size_t queries_per_mesh = 20;
  /// When false the candidate meshes are plain Delaunay triangulations.
  bool perturb = true;
};

struct LoopInstance {
  Mesh mesh;
  HalfEdgeId start;
  Point query;
  std::size_t meshes_tried = 0;
};

/// Searches seeded candidate meshes for a start/query pair on which the
/// deterministic visibility walk revisits an entry half-edge while the
/// celestial walk locates the query.
std::optional<LoopInstance> find_visibility_loop_instance(const LoopSearchOptions& options);

}  // namespace celestial
