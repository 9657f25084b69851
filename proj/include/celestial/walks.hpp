#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "celestial/mesh.hpp"

namespace celestial {

/// Start half-edge on the outer face, or an obtuse-bit table from another mesh.
class WalkSetupError : public Error {
 public:
  using Error::Error;
};

enum class StepAction { CrossTwin, AdvanceNext, ShiftPair };

/// One move of the walk: `edge` is the half-edge reached, via Twin for
/// CrossTwin and via Next otherwise.
struct WalkStep {
  HalfEdgeId edge;
  StepAction action;

  friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

struct WalkCounters {
  std::uint64_t orientation_tests = 0;
  std::uint64_t obtuse_tests = 0;
  std::uint64_t memo_lookups = 0;
  std::uint64_t distance_comparisons = 0;

  friend bool operator==(const WalkCounters&, const WalkCounters&) = default;
};

struct WalkTrace {
  std::vector<WalkStep> steps;
  std::vector<FaceId> visited_faces;
  WalkCounters counters;

  /// Perimeter half-edges reached by the face scan (AdvanceNext moves); the
  /// denominator of the orientation-tests-per-half-edge metric.
  std::size_t visited_halfedges() const;
  std::size_t crossings() const;
};

struct Located {
  FaceId face;
  friend bool operator==(const Located&, const Located&) = default;
};
struct Outside {
  HalfEdgeId exit;
  friend bool operator==(const Outside&, const Outside&) = default;
};
enum class AbortReason { BudgetExhausted, CycleDetected };
struct Aborted {
  AbortReason reason;
  friend bool operator==(const Aborted&, const Aborted&) = default;
};

using WalkResult = std::variant<Located, Outside, Aborted>;

struct WalkOutcome {
  WalkResult result;
  WalkTrace trace;
};

inline bool is_located(const WalkResult& r) { return std::holds_alternative<Located>(r); }
inline bool is_aborted(const WalkResult& r) { return std::holds_alternative<Aborted>(r); }
std::string describe(const WalkResult& r);

struct SelectorStrategy {
  enum class Kind { FirstCandidate, SeededRandom, GreedyMinDistance };
  Kind kind = Kind::FirstCandidate;
  std::uint64_t seed = 0;

  static SelectorStrategy first() { return {Kind::FirstCandidate, 0}; }
  static SelectorStrategy random(std::uint64_t seed) { return {Kind::SeededRandom, seed}; }
  static SelectorStrategy greedy() { return {Kind::GreedyMinDistance, 0}; }
};

struct VisibilityVariant {
  enum class Kind { DeterministicFirst, Stochastic };
  Kind kind = Kind::DeterministicFirst;
  std::uint64_t seed = 0;

  static VisibilityVariant deterministic() { return {Kind::DeterministicFirst, 0}; }
  static VisibilityVariant stochastic(std::uint64_t seed) { return {Kind::Stochastic, seed}; }
};

/// Passing 0 as a budget selects the default of 10 moves per half-edge.
inline constexpr std::size_t kDefaultBudget = 0;
std::size_t resolve_budget(const Mesh& m, std::size_t budget);

/// Candidate set of the abstract walk for the current edge e: the perimeter edges
/// e' of face(e) with p strictly right of e' and Dist(e', p) < Dist(e, p).
/// The walk moves to the twin of one of them.
std::vector<HalfEdgeId> abstract_candidates(const Mesh& m, HalfEdgeId e, Point p);

/// Nondeterministic walk over strictly decreasing celestial distances,
/// materializing the full candidate set in every face.
WalkOutcome abstract_walk(const Mesh& m, HalfEdgeId start, Point p, SelectorStrategy sel,
                          std::size_t budget = kDefaultBudget);

/// Oblivious walk using only orientation tests: scan the face for an edge
/// with p strictly on its right, then slide along obtuse corners while p is
/// left of the approximate bisector. `memo` replaces obtuse evaluations by
/// table lookups.
WalkOutcome celestial_walk(const Mesh& m, HalfEdgeId start, Point p,
                           std::size_t budget = kDefaultBudget, const ObtuseBits* memo = nullptr);

WalkOutcome visibility_walk(const Mesh& m, HalfEdgeId start, Point p, VisibilityVariant variant,
                            std::size_t budget = kDefaultBudget);

/// Visits the faces crossed by the segment from the start face's centroid
/// to p. Vertices on the segment's line count as lying to its left.
WalkOutcome straight_walk(const Mesh& m, HalfEdgeId start, Point p,
                          std::size_t budget = kDefaultBudget);

enum class WalkKind { Celestial, Abstract, Visibility, Straight };

std::string_view to_string(WalkKind k);
std::optional<WalkKind> parse_walk_kind(std::string_view name);
std::string_view to_string(StepAction a);
std::string_view to_string(SelectorStrategy::Kind k);

/// A fully specified walk configuration, used by the batch runner and CLI.
struct WalkSpec {
  WalkKind kind = WalkKind::Celestial;
  SelectorStrategy selector;
  VisibilityVariant visibility;
  bool memo_obtuse = false;

  std::string label() const;
};

/// Inverse of WalkSpec::label(); `seed` feeds the randomized variants.
/// A bare "abstract" means the first-candidate selector.
std::optional<WalkSpec> parse_walk_spec(std::string_view label, std::uint64_t seed = 0);

/// `memo` is consulted only for celestial walks with memo_obtuse set.
WalkOutcome run_walk(const Mesh& m, const WalkSpec& spec, HalfEdgeId start, Point p,
                     std::size_t budget = kDefaultBudget, const ObtuseBits* memo = nullptr);

/// Serialized trace: walk label, start, query, result, counters, visited
/// faces and steps, in that fixed field order.
struct TraceDocument {
  std::string walk;
  HalfEdgeId start;
  Point query;
  WalkResult result;
  WalkTrace trace;
};

std::string format_trace(const TraceDocument& doc);
TraceDocument parse_trace(std::string_view text);

}  // namespace celestial
