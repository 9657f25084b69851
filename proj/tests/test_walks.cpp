#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "celestial/generators.hpp"
#include "celestial/mesh_io.hpp"
#include "celestial/walks.hpp"
#include "oracles.hpp"

using namespace celestial;

namespace {

Mesh two_triangles() {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<std::vector<std::uint32_t>> faces{{0, 1, 2}, {0, 2, 3}};
  return build_mesh(pts, faces);
}

std::vector<WalkSpec> all_specs(std::uint64_t seed) {
  std::vector<WalkSpec> out;
  for (const char* label : {"celestial", "celestial-memo", "abstract-first", "abstract-random", "abstract-greedy",
                            "visibility", "visibility-stochastic", "straight"}) {
    out.push_back(*parse_walk_spec(label, seed));
  }
  return out;
}

HalfEdgeId random_interior_halfedge(const Mesh& m, SplitMix64& rng) {
  while (true) {
    const HalfEdgeId h(static_cast<std::size_t>(rng.below(m.num_halfedges())));
    if (!m.is_outer(m.face(h))) return h;
  }
}

Point random_query(const Mesh& m, SplitMix64& rng) {
  const BoundingBox b = bounding_box(m);
  return {rng.uniform(b.xmin + 0.1 * b.width(), b.xmax - 0.1 * b.width()),
          rng.uniform(b.ymin + 0.1 * b.height(), b.ymax - 0.1 * b.height())};
}

std::size_t count(const WalkTrace& t, StepAction a) {
  return static_cast<std::size_t>(
      std::count_if(t.steps.begin(), t.steps.end(), [a](const WalkStep& s) { return s.action == a; }));
}

}  // namespace

TEST_CASE("two-triangle square: every walk crosses the diagonal once") {
  const Mesh m = two_triangles();
  const HalfEdgeId start(0u);
  const Point p{0.2, 0.8};
  for (const WalkSpec& spec : all_specs(1)) {
    CAPTURE(spec.label());
    const ObtuseBits memo = precompute_obtuse_bits(m);
    const WalkOutcome o = run_walk(m, spec, start, p, kDefaultBudget, &memo);
    REQUIRE(is_located(o.result));
    CHECK(std::get<Located>(o.result).face == FaceId(1u));
    CHECK(count(o.trace, StepAction::CrossTwin) == 1);
    CHECK(count(o.trace, StepAction::ShiftPair) == 0);
    CHECK(o.trace.visited_faces == std::vector<FaceId>{FaceId(0u), FaceId(1u)});
  }
}

TEST_CASE("query in the start face") {
  const Mesh m = two_triangles();
  for (const WalkSpec& spec : all_specs(2)) {
    const WalkOutcome o = run_walk(m, spec, HalfEdgeId(0u), {0.8, 0.2});
    REQUIRE(is_located(o.result));
    CHECK(std::get<Located>(o.result).face == FaceId(0u));
    CHECK(count(o.trace, StepAction::CrossTwin) == 0);
    CHECK(o.trace.visited_faces == std::vector<FaceId>{FaceId(0u)});
  }
}

TEST_CASE("query outside the domain") {
  const Mesh m = two_triangles();
  for (const WalkSpec& spec : all_specs(3)) {
    if (spec.kind == WalkKind::Straight) continue;
    CAPTURE(spec.label());
    const WalkOutcome o = run_walk(m, spec, HalfEdgeId(0u), {3.0, 0.5});
    REQUIRE(std::holds_alternative<Outside>(o.result));
    const HalfEdgeId exit = std::get<Outside>(o.result).exit;
    // The exit edge is a boundary edge with p strictly to its right.
    CHECK(m.is_outer(m.face(m.twin(exit))));
    CHECK(oracle::orient(m.origin_point(exit), m.target_point(exit), {3.0, 0.5}) < 0);
  }
}

TEST_CASE("Outside invariant on random meshes") {
  SplitMix64 rng(17);
  for (int k = 0; k < 10; ++k) {
    const Mesh m = random_flipped(100, 100, rng.next());
    for (int i = 0; i < 100; ++i) {
      const HalfEdgeId s = random_interior_halfedge(m, rng);
      const Point p{rng.uniform(-1, 2), rng.uniform(-1, 2)};
      for (const WalkSpec& spec : {*parse_walk_spec("celestial"), *parse_walk_spec("abstract-greedy")}) {
        const WalkOutcome o = run_walk(m, spec, s, p);
        if (const auto* out = std::get_if<Outside>(&o.result)) {
          CHECK(m.is_outer(m.face(m.twin(out->exit))));
          CHECK(oracle::orient(m.origin_point(out->exit), m.target_point(out->exit), p) < 0);
        } else {
          REQUIRE(is_located(o.result));
          CHECK(oracle::in_face(m, std::get<Located>(o.result).face, p));
        }
      }
    }
  }
}

TEST_CASE("setup errors") {
  const Mesh m = two_triangles();
  HalfEdgeId outer_edge = m.edge(m.outer_face());
  for (const WalkSpec& spec : all_specs(4)) {
    CHECK_THROWS_AS(run_walk(m, spec, outer_edge, {0.5, 0.5}), WalkSetupError);
    CHECK_THROWS_AS(run_walk(m, spec, HalfEdgeId(1000u), {0.5, 0.5}), InvalidIdError);
  }
  const Mesh other = hex_grid(2, 2, 1.0);
  const ObtuseBits wrong = precompute_obtuse_bits(other);
  CHECK_THROWS_AS(celestial_walk(m, HalfEdgeId(0u), {0.2, 0.8}, kDefaultBudget, &wrong), WalkSetupError);
  CHECK_THROWS_AS(celestial_walk(m, HalfEdgeId(0u), {0.2, std::numeric_limits<double>::infinity()}),
                  InvalidInputError);
}

TEST_CASE("budget") {
  const Mesh m = random_delaunay(400, 1);
  CHECK(resolve_budget(m, 0) == 10 * m.num_halfedges());
  CHECK(resolve_budget(m, 7) == 7);
  // Far query from a corner start: three moves cannot reach it.
  const auto faces = faces_containing(m, {0.05, 0.05});
  REQUIRE_FALSE(faces.empty());
  const HalfEdgeId s = m.edge(faces.front());
  for (const WalkSpec& spec : all_specs(5)) {
    const WalkOutcome o = run_walk(m, spec, s, {0.95, 0.95}, 3);
    REQUIRE(is_aborted(o.result));
    CHECK(std::get<Aborted>(o.result).reason == AbortReason::BudgetExhausted);
    // The check runs between moves, so the trace ends just past the budget.
    CHECK(o.trace.steps.size() > 3);
    CHECK(o.trace.steps.size() <= 3 + 4);
  }
}

TEST_CASE("loop fixture: visibility cycles, celestial locates") {
  const MeshDocument doc = read_mesh_file(std::string(CELESTIAL_FIXTURES) + "/loop.fixture");
  REQUIRE(doc.start.has_value());
  REQUIRE(doc.query.has_value());
  const Mesh m = build_mesh(doc);
  const WalkOutcome vis = visibility_walk(m, *doc.start, *doc.query, VisibilityVariant::deterministic(), 10000);
  REQUIRE(is_aborted(vis.result));
  CHECK(std::get<Aborted>(vis.result).reason == AbortReason::CycleDetected);
  CHECK(vis.trace.steps.size() < 10000);

  const WalkOutcome cel = celestial_walk(m, *doc.start, *doc.query);
  REQUIRE(is_located(cel.result));
  CHECK(oracle::in_face(m, std::get<Located>(cel.result).face, *doc.query));
  for (const char* label : {"abstract-first", "abstract-random", "abstract-greedy", "straight"}) {
    const WalkOutcome o = run_walk(m, *parse_walk_spec(label, 9), *doc.start, *doc.query);
    REQUIRE(is_located(o.result));
    CHECK(oracle::in_face(m, std::get<Located>(o.result).face, *doc.query));
  }
  // The stochastic variant escapes the cycle.
  const WalkOutcome st = visibility_walk(m, *doc.start, *doc.query, VisibilityVariant::stochastic(3));
  CHECK(is_located(st.result));
}

TEST_CASE("visibility walk terminates on Delaunay meshes") {
  SplitMix64 rng(23);
  for (int k = 0; k < 10; ++k) {
    const Mesh m = random_delaunay(300, rng.next());
    for (int i = 0; i < 200; ++i) {
      const Point p = random_query(m, rng);
      const WalkOutcome o = visibility_walk(m, random_interior_halfedge(m, rng), p, VisibilityVariant::deterministic());
      REQUIRE(is_located(o.result));
      CHECK(oracle::in_face(m, std::get<Located>(o.result).face, p));
    }
  }
}

TEST_CASE("all walks agree with the containment oracle") {
  SplitMix64 rng(29);
  for (int k = 0; k < 12; ++k) {
    const std::uint64_t seed = rng.next();
    const Mesh m = k % 3 == 0   ? close_convex_hull(hex_grid(8, 8, 1.0))
                   : k % 3 == 1 ? random_flipped(200, 200, seed)
                                : chord_split_subdivision(150, seed);
    const ObtuseBits memo = precompute_obtuse_bits(m);
    for (int i = 0; i < 100; ++i) {
      const HalfEdgeId s = random_interior_halfedge(m, rng);
      const Point p = random_query(m, rng);
      for (const WalkSpec& spec : all_specs(rng.next())) {
        if (spec.kind == WalkKind::Visibility) continue;
        const WalkOutcome o = run_walk(m, spec, s, p, kDefaultBudget, &memo);
        CAPTURE(spec.label());
        REQUIRE(is_located(o.result));
        CHECK(oracle::in_face(m, std::get<Located>(o.result).face, p));
        CHECK(o.trace.visited_faces.back() == std::get<Located>(o.result).face);
      }
    }
  }
}

TEST_CASE("straight walk follows the exact segment") {
  // Start face centroid to p, checked against exact clipping of the segment
  // shifted by an infinitesimal amount to the right (vertices on the line
  // count as left).
  SplitMix64 rng(31);
  for (int k = 0; k < 8; ++k) {
    const Mesh m = random_flipped(120, 60, rng.next());
    for (int i = 0; i < 60; ++i) {
      const HalfEdgeId s = random_interior_halfedge(m, rng);
      const Point p = random_query(m, rng);
      const Point c = face_centroid(m, m.face(s));
      const WalkOutcome o = straight_walk(m, s, p);
      if (faces_containing(m, p).empty()) continue;  // hull of random points misses a corner
      REQUIRE(is_located(o.result));
      const auto expected = oracle::faces_along_segment(m, c, p, mpq_class(1, 1000000000));
      CHECK(o.trace.visited_faces == expected);
    }
  }
  // Through a vertex: the unit square, segment along the diagonal.
  const Mesh sq = build_mesh(std::vector<Point>{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}},
                             std::vector<std::vector<std::uint32_t>>{{0, 1, 4, 3}, {1, 2, 5, 4}});
  const WalkOutcome o = straight_walk(sq, HalfEdgeId(0u), {1.5, 0.5});
  REQUIRE(is_located(o.result));
  CHECK(std::get<Located>(o.result).face == FaceId(1u));
  CHECK(o.trace.visited_faces == oracle::faces_along_segment(sq, {0.5, 0.5}, {1.5, 0.5}, mpq_class(1, 1000000)));
}

TEST_CASE("celestial distance strictly decreases along abstract walks") {
  SplitMix64 rng(37);
  for (int k = 0; k < 6; ++k) {
    const Mesh m = random_flipped(150, 150, rng.next());
    for (int i = 0; i < 100; ++i) {
      const HalfEdgeId s = random_interior_halfedge(m, rng);
      const Point p = random_query(m, rng);
      const WalkOutcome o = abstract_walk(m, s, p, SelectorStrategy::random(rng.next()));
      REQUIRE(is_located(o.result));
      std::vector<HalfEdgeId> entries{s};
      for (const WalkStep& st : o.trace.steps) {
        if (st.action == StepAction::CrossTwin) entries.push_back(st.edge);
      }
      for (std::size_t j = 1; j < entries.size(); ++j) {
        const HalfEdgeId prev = m.twin(entries[j]);
        const auto dp = oracle::distance(m.origin_point(prev), m.target_point(prev), p);
        const auto dq = oracle::distance(m.origin_point(entries[j - 1]), m.target_point(entries[j - 1]), p);
        if (j > 1) CHECK(oracle::compare(dp, dq) < 0);
      }
    }
  }
}

TEST_CASE("candidate sets are never empty outside the target face") {
  SplitMix64 rng(41);
  std::size_t checked = 0;
  while (checked < 10000) {
    const Mesh m = rng.below(2) ? random_flipped(80, 80, rng.next()) : chord_split_subdivision(60, rng.next());
    for (int i = 0; i < 500; ++i) {
      const HalfEdgeId e = random_interior_halfedge(m, rng);
      const Point p = random_query(m, rng);
      if (oracle::in_face(m, m.face(e), p)) continue;
      if (oracle::orient(m.origin_point(e), m.target_point(e), p) <= 0) continue;
      const auto cand = abstract_candidates(m, e, p);
      CHECK_FALSE(cand.empty());
      for (HalfEdgeId c : cand) {
        CHECK(m.face(c) == m.face(e));
        CHECK(oracle::orient(m.origin_point(c), m.target_point(c), p) < 0);
      }
      ++checked;
    }
  }
}

TEST_CASE("celestial walk is oblivious and memo-equivalent") {
  SplitMix64 rng(43);
  for (int k = 0; k < 6; ++k) {
    const Mesh m = k % 2 ? random_flipped(200, 200, rng.next()) : hex_grid(12, 12, 1.0);
    const ObtuseBits memo = precompute_obtuse_bits(m);
    for (int i = 0; i < 100; ++i) {
      const HalfEdgeId s = random_interior_halfedge(m, rng);
      const Point p = random_query(m, rng);
      const WalkOutcome a = celestial_walk(m, s, p);
      const WalkOutcome b = celestial_walk(m, s, p);
      const WalkOutcome c = celestial_walk(m, s, p, kDefaultBudget, &memo);
      CHECK(a.trace.steps == b.trace.steps);
      CHECK(a.result == b.result);
      CHECK(a.trace.steps == c.trace.steps);
      CHECK(a.result == c.result);
      CHECK(a.trace.counters.orientation_tests == c.trace.counters.orientation_tests);
      CHECK(c.trace.counters.obtuse_tests == 0);
      CHECK(c.trace.counters.memo_lookups == a.trace.counters.obtuse_tests);
    }
  }
}

TEST_CASE("walk labels") {
  for (const WalkSpec& spec : all_specs(0)) {
    const auto back = parse_walk_spec(spec.label(), 0);
    REQUIRE(back.has_value());
    CHECK(back->label() == spec.label());
  }
  CHECK(parse_walk_spec("abstract")->label() == "abstract-first");
  CHECK_FALSE(parse_walk_spec("teleport").has_value());
  CHECK(parse_walk_kind("straight") == WalkKind::Straight);
}

TEST_CASE("trace documents round-trip") {
  const Mesh m = random_flipped(100, 100, 2);
  SplitMix64 rng(47);
  for (const WalkSpec& spec : all_specs(6)) {
    const HalfEdgeId s = random_interior_halfedge(m, rng);
    const Point p = random_query(m, rng);
    const WalkOutcome o = run_walk(m, spec, s, p);
    const TraceDocument doc{spec.label(), s, p, o.result, o.trace};
    const std::string text = format_trace(doc);
    const TraceDocument back = parse_trace(text);
    CHECK(back.walk == doc.walk);
    CHECK(back.start == s);
    CHECK(back.query == p);
    CHECK(back.result == o.result);
    CHECK(back.trace.steps == o.trace.steps);
    CHECK(back.trace.visited_faces == o.trace.visited_faces);
    CHECK(back.trace.counters == o.trace.counters);
    CHECK(format_trace(back) == text);
  }
  CHECK_THROWS_AS(parse_trace("{}"), FormatError);
  CHECK_THROWS_AS(parse_trace("[1, 2"), FormatError);
}
