#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "celestial/geometry.hpp"

namespace celestial {

/// Face cycles that cannot be assembled into a valid subdivision.
class MeshBuildError : public Error {
 public:
  using Error::Error;
};

/// Id outside its table.
class InvalidIdError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for the given arguments (e.g. containment in the outer face).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

template <class Tag>
struct Id {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit Id(int v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }
  constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(Id, Id) = default;
};

using VertexId = Id<struct VertexTag>;
using HalfEdgeId = Id<struct HalfEdgeTag>;
using FaceId = Id<struct FaceTag>;

enum class Move { Next, Twin };

/// Index-based half-edge representation of a convex planar subdivision.
///
/// Interior faces are strictly convex and counter-clockwise. The boundary of
/// the covered region is represented by one extra face flagged `is_outer`
/// whose perimeter runs clockwise. The target of a half-edge is the origin
/// of its twin. Instances are immutable once built.
class Mesh {
 public:
  struct HalfEdge {
    VertexId origin;
    HalfEdgeId twin;
    HalfEdgeId next;
    FaceId face;
  };

  struct Face {
    HalfEdgeId edge;
    bool is_outer = false;
  };

  Mesh() = default;

  /// Adopts raw tables without checking them; run validate_mesh afterwards.
  Mesh(std::vector<Point> vertices, std::vector<HalfEdge> halfedges, std::vector<Face> faces);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_halfedges() const { return halfedges_.size(); }
  std::size_t num_faces() const { return faces_.size(); }

  Point point(VertexId v) const { return vertices_[checked(v, vertices_.size(), "vertex")]; }
  const HalfEdge& halfedge(HalfEdgeId h) const {
    return halfedges_[checked(h, halfedges_.size(), "half-edge")];
  }
  const Face& face_record(FaceId f) const { return faces_[checked(f, faces_.size(), "face")]; }

  VertexId origin(HalfEdgeId h) const { return halfedge(h).origin; }
  VertexId target(HalfEdgeId h) const { return halfedge(halfedge(h).twin).origin; }
  HalfEdgeId twin(HalfEdgeId h) const { return halfedge(h).twin; }
  HalfEdgeId next(HalfEdgeId h) const { return halfedge(h).next; }
  FaceId face(HalfEdgeId h) const { return halfedge(h).face; }
  HalfEdgeId edge(FaceId f) const { return face_record(f).edge; }
  bool is_outer(FaceId f) const { return face_record(f).is_outer; }

  Point origin_point(HalfEdgeId h) const { return vertices_[origin(h).index()]; }
  Point target_point(HalfEdgeId h) const { return vertices_[target(h).index()]; }

  /// The designated outer face; invalid id when the tables carry none.
  FaceId outer_face() const { return outer_face_; }

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const HalfEdge> halfedges() const { return halfedges_; }
  std::span<const Face> faces() const { return faces_; }

  /// Process-unique tag of the tables this mesh was built from; copies share it.
  std::uint64_t serial() const { return serial_; }

 private:
  template <class Tag>
  static std::size_t checked(Id<Tag> id, std::size_t size, const char* what) {
    if (id.index() >= size) {
      throw InvalidIdError(std::string("invalid ") + what + " id " + std::to_string(id.value));
    }
    return id.index();
  }

  std::vector<Point> vertices_;
  std::vector<HalfEdge> halfedges_;
  std::vector<Face> faces_;
  FaceId outer_face_;
  std::uint64_t serial_ = 0;
};

HalfEdgeId navigate(const Mesh& m, HalfEdgeId e, Move move);

/// Builds the half-edge structure from CCW face cycles. Interior half-edges
/// are numbered cycle by cycle in input order (face i starts at the
/// half-edge leaving cycle[i][0]); the outer ring follows. Throws
/// MeshBuildError on any violated precondition.
Mesh build_mesh(std::span<const Point> points, std::span<const std::vector<std::uint32_t>> face_cycles);

/// Empty when every structural invariant holds; otherwise one message per violation.
std::vector<std::string> validate_mesh(const Mesh& m);

std::vector<HalfEdgeId> face_perimeter(const Mesh& m, FaceId f);

/// Closed containment in a convex interior face.
bool point_in_face(const Mesh& m, FaceId f, Point p);

/// Interior faces that closed-contain p, by linear scan.
std::vector<FaceId> faces_containing(const Mesh& m, Point p);

/// Interior face cycles as vertex indices, in face id order.
std::vector<std::vector<std::uint32_t>> face_cycles(const Mesh& m);

Point face_centroid(const Mesh& m, FaceId f);

/// One bit per half-edge recording whether the interior corner at its
/// target is strictly obtuse. Outer-face half-edges carry no bit.
class ObtuseBits {
 public:
  ObtuseBits() = default;
  ObtuseBits(std::uint64_t mesh_serial, std::vector<std::int8_t> bits)
      : mesh_serial_(mesh_serial), bits_(std::move(bits)) {}

  std::optional<bool> get(HalfEdgeId h) const {
    if (h.index() >= bits_.size()) throw InvalidIdError("obtuse bit out of range");
    const auto b = bits_[h.index()];
    if (b < 0) return std::nullopt;
    return b != 0;
  }
  std::size_t size() const { return bits_.size(); }
  std::uint64_t mesh_serial() const { return mesh_serial_; }
  bool matches(const Mesh& m) const {
    return mesh_serial_ == m.serial() && bits_.size() == m.num_halfedges();
  }

 private:
  std::uint64_t mesh_serial_ = 0;
  std::vector<std::int8_t> bits_;
};

ObtuseBits precompute_obtuse_bits(const Mesh& m);

}  // namespace celestial

template <class Tag>
struct std::hash<celestial::Id<Tag>> {
  std::size_t operator()(celestial::Id<Tag> id) const noexcept { return id.value; }
};
