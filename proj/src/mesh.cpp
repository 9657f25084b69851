#include "celestial/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <unordered_map>

#include "celestial/celestial_distance.hpp"
#include "celestial/predicates.hpp"

namespace celestial {
namespace {

std::atomic<std::uint64_t> g_next_serial{1};

std::uint64_t directed_key(std::uint32_t u, std::uint32_t v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::string he_name(std::size_t h) { return "half-edge " + std::to_string(h); }

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<HalfEdge> halfedges, std::vector<Face> faces)
    : vertices_(std::move(vertices)),
      halfedges_(std::move(halfedges)),
      faces_(std::move(faces)),
      serial_(g_next_serial.fetch_add(1)) {
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (faces_[f].is_outer) {
      outer_face_ = FaceId(f);
      break;
    }
  }
}

HalfEdgeId navigate(const Mesh& m, HalfEdgeId e, Move move) {
  return move == Move::Next ? m.next(e) : m.twin(e);
}

Mesh build_mesh(std::span<const Point> points,
                std::span<const std::vector<std::uint32_t>> face_cycles) {
  const std::size_t nv = points.size();
  std::set<std::pair<double, double>> seen;
  for (std::size_t i = 0; i < nv; ++i) {
    if (!is_finite(points[i])) {
      throw MeshBuildError("vertex " + std::to_string(i) + " has a non-finite coordinate");
    }
    if (!seen.emplace(points[i].x, points[i].y).second) {
      throw MeshBuildError("vertex " + std::to_string(i) + " duplicates an earlier vertex");
    }
  }
  if (face_cycles.empty()) throw MeshBuildError("no faces");

  std::vector<Mesh::HalfEdge> halfedges;
  std::unordered_map<std::uint64_t, std::uint32_t> by_key;
  std::vector<bool> used(nv, false);
  std::vector<Point> polygon;

  for (std::size_t f = 0; f < face_cycles.size(); ++f) {
    const auto& cycle = face_cycles[f];
    const std::string name = "face " + std::to_string(f);
    if (cycle.size() < 3) throw MeshBuildError(name + " has fewer than 3 vertices");
    polygon.clear();
    for (std::uint32_t v : cycle) {
      if (v >= nv) throw MeshBuildError(name + " references missing vertex " + std::to_string(v));
      polygon.push_back(points[v]);
      used[v] = true;
    }
    if (!is_strictly_convex_ccw(polygon)) {
      throw MeshBuildError(name + " is not a strictly convex counter-clockwise polygon");
    }
    const auto base = static_cast<std::uint32_t>(halfedges.size());
    const auto k = static_cast<std::uint32_t>(cycle.size());
    for (std::uint32_t j = 0; j < k; ++j) {
      const std::uint32_t u = cycle[j];
      const std::uint32_t v = cycle[(j + 1) % k];
      if (!by_key.emplace(directed_key(u, v), base + j).second) {
        throw MeshBuildError("directed edge " + std::to_string(u) + "->" + std::to_string(v) +
                             " appears twice (non-manifold)");
      }
      halfedges.push_back({VertexId(u), HalfEdgeId(), HalfEdgeId(base + (j + 1) % k), FaceId(f)});
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (!used[v]) throw MeshBuildError("vertex " + std::to_string(v) + " is not used by any face");
  }

  const FaceId outer(face_cycles.size());
  const std::size_t interior_count = halfedges.size();
  std::unordered_map<std::uint32_t, std::uint32_t> outer_leaving;  // vertex -> outer half-edge
  for (std::size_t h = 0; h < interior_count; ++h) {
    const std::uint32_t u = halfedges[h].origin.value;
    const std::uint32_t v = halfedges[halfedges[h].next.index()].origin.value;
    if (auto it = by_key.find(directed_key(v, u)); it != by_key.end()) {
      halfedges[h].twin = HalfEdgeId(it->second);
      continue;
    }
    const auto o = static_cast<std::uint32_t>(halfedges.size());
    halfedges.push_back({VertexId(v), HalfEdgeId(h), HalfEdgeId(), outer});
    halfedges[h].twin = HalfEdgeId(o);
    if (!outer_leaving.emplace(v, o).second) {
      throw MeshBuildError("boundary touches itself at vertex " + std::to_string(v));
    }
  }
  if (halfedges.size() == interior_count) throw MeshBuildError("subdivision has no boundary");

  for (std::size_t o = interior_count; o < halfedges.size(); ++o) {
    const std::uint32_t target = halfedges[halfedges[o].twin.index()].origin.value;
    auto it = outer_leaving.find(target);
    if (it == outer_leaving.end()) throw MeshBuildError("boundary is not closed");
    halfedges[o].next = HalfEdgeId(it->second);
  }
  // The boundary must be a single cycle.
  std::size_t ring = 0;
  HalfEdgeId h(interior_count);
  do {
    h = halfedges[h.index()].next;
    ++ring;
  } while (h.index() != interior_count && ring <= halfedges.size());
  if (ring != halfedges.size() - interior_count) {
    throw MeshBuildError("boundary is not a single closed cycle");
  }

  std::vector<Mesh::Face> faces;
  faces.reserve(face_cycles.size() + 1);
  std::uint32_t next_start = 0;
  for (const auto& cycle : face_cycles) {
    faces.push_back({HalfEdgeId(next_start), false});
    next_start += static_cast<std::uint32_t>(cycle.size());
  }
  faces.push_back({HalfEdgeId(interior_count), true});

  Mesh mesh(std::vector<Point>(points.begin(), points.end()), std::move(halfedges), std::move(faces));
  if (auto violations = validate_mesh(mesh); !violations.empty()) {
    throw MeshBuildError(violations.front());
  }
  return mesh;
}

std::vector<std::string> validate_mesh(const Mesh& m) {
  std::vector<std::string> out;
  const std::size_t nh = m.num_halfedges();
  const std::size_t nf = m.num_faces();
  const std::size_t nv = m.num_vertices();
  const auto hes = m.halfedges();
  const auto faces = m.faces();

  bool ids_ok = true;
  for (std::size_t h = 0; h < nh; ++h) {
    const auto& r = hes[h];
    if (r.origin.index() >= nv || r.twin.index() >= nh || r.next.index() >= nh ||
        r.face.index() >= nf) {
      out.push_back(he_name(h) + " holds an out-of-range id");
      ids_ok = false;
    }
  }
  for (std::size_t f = 0; f < nf; ++f) {
    if (faces[f].edge.index() >= nh) {
      out.push_back("face " + std::to_string(f) + " holds an out-of-range edge id");
      ids_ok = false;
    }
  }
  if (!ids_ok) return out;

  for (std::size_t h = 0; h < nh; ++h) {
    const auto& r = hes[h];
    if (r.twin.index() == h || hes[r.twin.index()].twin.index() != h) {
      out.push_back("twin involution broken at " + he_name(h));
    }
    if (r.origin == hes[r.twin.index()].origin) {
      out.push_back(he_name(h) + " is degenerate: origin equals target");
    }
    const auto& nx = hes[r.next.index()];
    if (nx.face != r.face) out.push_back("next leaves the face at " + he_name(h));
    if (nx.origin != hes[r.twin.index()].origin) {
      out.push_back("origin(next) differs from target at " + he_name(h));
    }
  }

  std::vector<int> in_degree(nh, 0);
  for (const auto& r : hes) ++in_degree[r.next.index()];
  if (std::any_of(in_degree.begin(), in_degree.end(), [](int d) { return d != 1; })) {
    out.push_back("next is not a permutation of the half-edges");
    return out;
  }

  std::vector<std::size_t> face_size(nf, 0);
  for (const auto& r : hes) ++face_size[r.face.index()];
  std::size_t outer_count = 0;
  std::size_t perimeter_total = 0;
  std::vector<Point> polygon;
  for (std::size_t f = 0; f < nf; ++f) {
    const std::string name = "face " + std::to_string(f);
    if (hes[faces[f].edge.index()].face.index() != f) {
      out.push_back(name + " points at an edge of another face");
      continue;
    }
    polygon.clear();
    HalfEdgeId h = faces[f].edge;
    do {
      polygon.push_back(m.vertices()[hes[h.index()].origin.index()]);
      h = hes[h.index()].next;
    } while (h != faces[f].edge && polygon.size() <= nh);
    perimeter_total += polygon.size();
    if (polygon.size() != face_size[f]) {
      out.push_back(name + " perimeter orbit does not cover its half-edges");
    }
    if (faces[f].is_outer) {
      ++outer_count;
      double area2 = 0.0;
      for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Point a = polygon[i];
        const Point b = polygon[(i + 1) % polygon.size()];
        area2 += a.x * b.y - a.y * b.x;
      }
      if (!(area2 < 0.0)) out.push_back("outer face is not clockwise");
    } else if (!is_strictly_convex_ccw(polygon)) {
      out.push_back(name + " not strictly convex");
    }
  }
  if (outer_count != 1) {
    out.push_back("expected exactly one outer face, found " + std::to_string(outer_count));
  }
  if (perimeter_total != nh) out.push_back("face perimeters do not partition the half-edges");

  const long euler = static_cast<long>(nv) - static_cast<long>(nh / 2) + static_cast<long>(nf);
  if (nh % 2 != 0 || euler != 2) {
    out.push_back("Euler characteristic V - E + F = " + std::to_string(euler) + ", expected 2");
  }
  return out;
}

std::vector<HalfEdgeId> face_perimeter(const Mesh& m, FaceId f) {
  std::vector<HalfEdgeId> out;
  const HalfEdgeId start = m.edge(f);
  HalfEdgeId h = start;
  do {
    out.push_back(h);
    h = m.next(h);
    if (out.size() > m.num_halfedges()) throw InvalidIdError("perimeter orbit does not close");
  } while (h != start);
  return out;
}

bool point_in_face(const Mesh& m, FaceId f, Point p) {
  if (m.is_outer(f)) throw UnsupportedError("containment in the outer face is not defined");
  const HalfEdgeId start = m.edge(f);
  HalfEdgeId h = start;
  do {
    if (strictly_right(m.origin_point(h), m.target_point(h), p)) return false;
    h = m.next(h);
  } while (h != start);
  return true;
}

std::vector<FaceId> faces_containing(const Mesh& m, Point p) {
  std::vector<FaceId> out;
  for (std::size_t f = 0; f < m.num_faces(); ++f) {
    if (!m.is_outer(FaceId(f)) && point_in_face(m, FaceId(f), p)) out.push_back(FaceId(f));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> face_cycles(const Mesh& m) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t f = 0; f < m.num_faces(); ++f) {
    if (m.is_outer(FaceId(f))) continue;
    auto& cycle = out.emplace_back();
    for (HalfEdgeId h : face_perimeter(m, FaceId(f))) cycle.push_back(m.origin(h).value);
  }
  return out;
}

Point face_centroid(const Mesh& m, FaceId f) {
  Point sum;
  std::size_t n = 0;
  for (HalfEdgeId h : face_perimeter(m, f)) {
    sum = sum + m.origin_point(h);
    ++n;
  }
  return (1.0 / static_cast<double>(n)) * sum;
}

ObtuseBits precompute_obtuse_bits(const Mesh& m) {
  std::vector<std::int8_t> bits(m.num_halfedges(), -1);
  for (std::size_t h = 0; h < m.num_halfedges(); ++h) {
    const HalfEdgeId e(h);
    if (m.is_outer(m.face(e))) continue;
    bits[h] = obtuse(m.origin_point(e), m.target_point(e), m.target_point(m.next(e))) ? 1 : 0;
  }
  return ObtuseBits(m.serial(), std::move(bits));
}

}  // namespace celestial
