#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "celestial/generators.hpp"
#include "celestial/mesh_io.hpp"
#include "celestial/walks.hpp"
#include "oracles.hpp"

using namespace celestial;

namespace {

// Empty-circle property checked independently for every interior edge.
bool is_delaunay_oracle(const Mesh& m) {
  for (std::size_t i = 0; i < m.num_halfedges(); ++i) {
    const HalfEdgeId h(i);
    const HalfEdgeId t = m.twin(h);
    if (m.is_outer(m.face(h)) || m.is_outer(m.face(t))) continue;
    const Point a = m.origin_point(h), b = m.target_point(h);
    const Point c = m.target_point(m.next(h));
    const Point d = m.target_point(m.next(t));
    if (oracle::incircle(a, b, c, d) > 0) return false;
  }
  return true;
}

std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set(const Mesh& m) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t i = 0; i < m.num_halfedges(); ++i) {
    out.insert(std::minmax(m.origin(HalfEdgeId(i)).value, m.target(HalfEdgeId(i)).value));
  }
  return out;
}

bool all_triangles(const Mesh& m) {
  for (std::size_t f = 0; f < m.num_faces(); ++f) {
    if (!m.is_outer(FaceId(f)) && face_perimeter(m, FaceId(f)).size() != 3) return false;
  }
  return true;
}

bool boundary_is_convex(const Mesh& m) {
  // Outer ring runs clockwise, so every corner turns right or goes straight.
  for (HalfEdgeId h : face_perimeter(m, m.outer_face())) {
    if (oracle::orient(m.origin_point(h), m.target_point(h), m.target_point(m.next(h))) > 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("hex grid counts and geometry") {
  struct Case {
    std::size_t rows, cols, v, h, f;
  };
  // Hand counts: one hexagon, a row of two, a column of two, and a 2x2 block
  // whose shifted second row shares three corners per neighbour.
  for (const Case c : {Case{1, 1, 6, 12, 2}, Case{1, 2, 10, 22, 3}, Case{2, 1, 10, 22, 3}, Case{2, 2, 16, 38, 5}}) {
    const Mesh m = hex_grid(c.rows, c.cols, 1.0);
    CHECK(m.num_vertices() == c.v);
    CHECK(m.num_halfedges() == c.h);
    CHECK(m.num_faces() == c.f);
    CHECK(validate_mesh(m).empty());
  }
  const Mesh m = hex_grid(4, 5, 0.25);
  for (std::size_t i = 0; i < m.num_halfedges(); ++i) {
    const Point a = m.origin_point(HalfEdgeId(i)), b = m.target_point(HalfEdgeId(i));
    CHECK(std::hypot(b.x - a.x, b.y - a.y) == doctest::Approx(0.25).epsilon(1e-12));
  }
  for (std::size_t f = 0; f + 1 < m.num_faces(); ++f) CHECK(face_perimeter(m, FaceId(f)).size() == 6);
  CHECK_THROWS_AS(hex_grid(0, 3, 1.0), InvalidInputError);
  CHECK_THROWS_AS(hex_grid(2, 3, -1.0), InvalidInputError);
}

TEST_CASE("Delaunay of the unit square") {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Mesh m = delaunay_triangulate(pts);
  const auto cycles = face_cycles(m);
  REQUIRE(cycles.size() == 2);
  // Cocircular: the diagonal 0-2 wins over 1-3.
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      edges.insert(std::minmax(c[i], c[(i + 1) % c.size()]));
    }
  }
  CHECK(edges.count({0, 2}) == 1);
  CHECK(edges.count({1, 3}) == 0);
  CHECK(m.num_halfedges() == 10);
}

TEST_CASE("Delaunay input errors") {
  CHECK_THROWS_AS(delaunay_triangulate(std::vector<Point>{{0, 0}, {1, 0}}), InvalidInputError);
  CHECK_THROWS_AS(delaunay_triangulate(std::vector<Point>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}), InvalidInputError);
  CHECK_THROWS_AS(delaunay_triangulate(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {1, 0}}), InvalidInputError);
}

TEST_CASE("Delaunay meshes satisfy the exact empty-circle oracle") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Mesh m = random_delaunay(50 + seed * 10, seed);
    REQUIRE(validate_mesh(m).empty());
    CHECK(all_triangles(m));
    CHECK(boundary_is_convex(m));
    CHECK(is_delaunay_oracle(m));
    // Every input point is a vertex, in input order.
    const auto pts = uniform_points(50 + seed * 10, seed);
    REQUIRE(pts.size() == m.num_vertices());
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(m.point(VertexId(i)) == pts[i]);
  }
}

TEST_CASE("Delaunay on lattice points with many cocircular quadruples") {
  std::vector<Point> pts;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) pts.push_back({static_cast<double>(i), static_cast<double>(j)});
  }
  const Mesh m = delaunay_triangulate(pts);
  CHECK(validate_mesh(m).empty());
  CHECK(is_delaunay_oracle(m));
  CHECK(m.num_faces() - 1 == 2 * 7 * 7);
  // Re-triangulating is stable: same cycles.
  CHECK(face_cycles(delaunay_triangulate(pts)) == face_cycles(m));
}

TEST_CASE("flip perturbation") {
  const Mesh base = random_delaunay(200, 5);
  CHECK(face_cycles(random_flip_perturb(base, 0, 9)) == face_cycles(base));

  // A convex quadrilateral has one flippable edge, so a single flip swaps the diagonal.
  const std::vector<Point> quad{{0, 0}, {2, 0}, {3, 2}, {0, 1}};
  const Mesh q = delaunay_triangulate(quad);
  const Mesh f = random_flip_perturb(q, 1, 1);
  CHECK(edge_set(f) != edge_set(q));
  CHECK(edge_set(random_flip_perturb(q, 2, 1)) == edge_set(q));

  const Mesh p = random_flip_perturb(base, 50, 3);
  CHECK(validate_mesh(p).empty());
  CHECK(all_triangles(p));
  CHECK(p.num_halfedges() == base.num_halfedges());
  CHECK_FALSE(is_delaunay_oracle(p));
  CHECK(face_cycles(random_flip_perturb(base, 50, 3)) == face_cycles(p));

  CHECK_THROWS_AS(random_flip_perturb(hex_grid(2, 2, 1.0), 3, 1), InvalidInputError);
}

TEST_CASE("chord split subdivision") {
  const Mesh zero = chord_split_subdivision(0, 1);
  CHECK(zero.num_faces() == 2);
  CHECK(zero.num_vertices() == 4);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Mesh m = chord_split_subdivision(10, seed);
    CHECK(m.num_faces() == 12);
    CHECK(validate_mesh(m).empty());
    const BoundingBox b = bounding_box(m);
    CHECK(b.xmin == 0.0);
    CHECK(b.ymin == 0.0);
    CHECK(b.xmax == 1.0);
    CHECK(b.ymax == 1.0);
    CHECK(boundary_is_convex(m));
  }
  const Mesh big = chord_split_subdivision(300, 7, {-2, -1, 3, 4});
  CHECK(big.num_faces() == 302);
  CHECK(validate_mesh(big).empty());
  CHECK_THROWS_AS(chord_split_subdivision(3, 1, {0, 0, 0, 1}), InvalidInputError);
}

TEST_CASE("closing the hull of a hex grid") {
  for (const auto [r, c] : {std::pair{1, 1}, std::pair{3, 4}, std::pair{10, 7}}) {
    const Mesh hex = hex_grid(r, c, 1.0);
    const Mesh closed = close_convex_hull(hex);
    CHECK(validate_mesh(closed).empty());
    CHECK(boundary_is_convex(closed));
    CHECK(closed.num_vertices() == hex.num_vertices());
    // Existing faces keep their ids and perimeters.
    const auto before = face_cycles(hex);
    const auto after = face_cycles(closed);
    REQUIRE(after.size() >= before.size());
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] == before[i]);
  }
  const Mesh del = random_delaunay(30, 2);
  CHECK(face_cycles(close_convex_hull(del)) == face_cycles(del));
}

TEST_CASE("uniform points") {
  const auto a = uniform_points(500, 11, {2, 3, 4, 7});
  CHECK(a == uniform_points(500, 11, {2, 3, 4, 7}));
  CHECK(a != uniform_points(500, 12, {2, 3, 4, 7}));
  for (const Point& p : a) {
    CHECK(p.x >= 2);
    CHECK(p.x < 4);
    CHECK(p.y >= 3);
    CHECK(p.y < 7);
  }
}

TEST_CASE("generators are deterministic") {
  auto bytes = [](const Mesh& m) { return format_mesh_document(to_document(m)); };
  CHECK(bytes(random_delaunay(300, 4)) == bytes(random_delaunay(300, 4)));
  CHECK(bytes(random_flipped(300, 300, 4)) == bytes(random_flipped(300, 300, 4)));
  CHECK(bytes(chord_split_subdivision(100, 4)) == bytes(chord_split_subdivision(100, 4)));
  CHECK(bytes(random_delaunay(300, 4)) != bytes(random_delaunay(300, 5)));
}

TEST_CASE("visibility loop search") {
  LoopSearchOptions opt;
  const auto found = find_visibility_loop_instance(opt);
  REQUIRE(found.has_value());
  const auto again = find_visibility_loop_instance(opt);
  REQUIRE(again.has_value());
  CHECK(again->start == found->start);
  CHECK(again->query == found->query);
  CHECK(again->meshes_tried == found->meshes_tried);

  const auto vis = visibility_walk(found->mesh, found->start, found->query, VisibilityVariant::deterministic(), 10000);
  REQUIRE(std::holds_alternative<Aborted>(vis.result));
  CHECK(std::get<Aborted>(vis.result).reason == AbortReason::CycleDetected);
  const auto cel = celestial_walk(found->mesh, found->start, found->query);
  REQUIRE(is_located(cel.result));
  CHECK(point_in_face(found->mesh, std::get<Located>(cel.result).face, found->query));

  // The committed fixture is exactly the instance found with the default options.
  MeshDocument doc = to_document(found->mesh);
  doc.start = found->start;
  doc.query = found->query;
  CHECK(format_mesh_document(doc) == read_text_file(std::string(CELESTIAL_FIXTURES) + "/loop.fixture"));

  // Walks on Delaunay triangulations never cycle, so the unperturbed search comes up empty.
  LoopSearchOptions plain = opt;
  plain.perturb = false;
  plain.max_meshes = 200;
  CHECK_FALSE(find_visibility_loop_instance(plain).has_value());
}
