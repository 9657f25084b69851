#include "celestial/walks.hpp"

#include <algorithm>
#include <unordered_set>

#include "celestial/celestial_distance.hpp"
#include "celestial/predicates.hpp"
#include "celestial/rng.hpp"

namespace celestial {
namespace {

// Shared bookkeeping for all strategies: move recording, counters, budget.
class Walker {
 public:
  Walker(const Mesh& m, HalfEdgeId start, Point p, std::size_t budget)
      : m_(m), p_(p), budget_(resolve_budget(m, budget)) {
    require_finite(p);
    if (m.is_outer(m.face(start))) throw WalkSetupError("start half-edge lies on the outer face");
    trace_.visited_faces.push_back(m.face(start));
  }

  const Mesh& mesh() const { return m_; }
  Point query() const { return p_; }
  WalkCounters& counters() { return trace_.counters; }

  bool right_of(HalfEdgeId h) {
    ++trace_.counters.orientation_tests;
    return strictly_right(m_.origin_point(h), m_.target_point(h), p_);
  }

  HalfEdgeId advance(HalfEdgeId h, StepAction action = StepAction::AdvanceNext) {
    const HalfEdgeId n = m_.next(h);
    trace_.steps.push_back({n, action});
    return n;
  }

  /// Moves to twin(h); nullopt when that would enter the outer face.
  std::optional<HalfEdgeId> cross(HalfEdgeId h) {
    const HalfEdgeId t = m_.twin(h);
    if (m_.is_outer(m_.face(t))) return std::nullopt;
    trace_.steps.push_back({t, StepAction::CrossTwin});
    trace_.visited_faces.push_back(m_.face(t));
    return t;
  }

  bool over_budget() const { return trace_.steps.size() > budget_; }

  WalkOutcome finish(WalkResult r) { return {r, std::move(trace_)}; }

 private:
  const Mesh& m_;
  Point p_;
  std::size_t budget_;
  WalkTrace trace_;
};

constexpr WalkResult kBudget = Aborted{AbortReason::BudgetExhausted};

// Perimeter edges of face(e) with p strictly right and a smaller celestial
// distance than e; the walk crosses to the twin of the selected one.
void collect_candidates(const Mesh& m, HalfEdgeId e, Point p, WalkCounters& counters,
                        std::vector<HalfEdgeId>& candidates, std::vector<CelestialDistance>& dist) {
  const CelestialDistance current = celestial_distance(m.origin_point(e), m.target_point(e), p);
  candidates.clear();
  dist.clear();
  for (HalfEdgeId h = m.next(e); h != e; h = m.next(h)) {
    ++counters.orientation_tests;
    if (!strictly_right(m.origin_point(h), m.target_point(h), p)) continue;
    const CelestialDistance d = celestial_distance(m.origin_point(h), m.target_point(h), p);
    ++counters.distance_comparisons;
    if (cd_less(d, current)) {
      candidates.push_back(h);
      dist.push_back(d);
    }
  }
}

}  // namespace

std::size_t WalkTrace::visited_halfedges() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const WalkStep& s) {
    return s.action == StepAction::AdvanceNext;
  }));
}

std::size_t WalkTrace::crossings() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const WalkStep& s) {
    return s.action == StepAction::CrossTwin;
  }));
}

std::size_t resolve_budget(const Mesh& m, std::size_t budget) {
  return budget == kDefaultBudget ? 10 * m.num_halfedges() : budget;
}

std::string describe(const WalkResult& r) {
  if (const auto* l = std::get_if<Located>(&r)) return "Located(" + std::to_string(l->face.value) + ")";
  if (const auto* o = std::get_if<Outside>(&r)) return "Outside(" + std::to_string(o->exit.value) + ")";
  const auto& a = std::get<Aborted>(r);
  return a.reason == AbortReason::CycleDetected ? "Aborted(CycleDetected)" : "Aborted(BudgetExhausted)";
}

std::vector<HalfEdgeId> abstract_candidates(const Mesh& m, HalfEdgeId e, Point p) {
  require_finite(p);
  WalkCounters unused;
  std::vector<HalfEdgeId> candidates;
  std::vector<CelestialDistance> dist;
  collect_candidates(m, e, p, unused, candidates, dist);
  return candidates;
}

WalkOutcome abstract_walk(const Mesh& m, HalfEdgeId start, Point p, SelectorStrategy sel,
                          std::size_t budget) {
  Walker w(m, start, p, budget);
  SplitMix64 rng(sel.seed);
  HalfEdgeId e = start;
  if (w.right_of(e)) {
    const auto t = w.cross(e);
    if (!t) return w.finish(Outside{e});
    e = *t;
  }

  std::vector<HalfEdgeId> candidates;
  std::vector<CelestialDistance> candidate_dist;
  while (true) {
    collect_candidates(m, e, p, w.counters(), candidates, candidate_dist);
    if (candidates.empty()) return w.finish(Located{m.face(e)});

    std::size_t pick = 0;
    switch (sel.kind) {
      case SelectorStrategy::Kind::FirstCandidate:
        break;
      case SelectorStrategy::Kind::SeededRandom:
        pick = rng.below(candidates.size());
        break;
      case SelectorStrategy::Kind::GreedyMinDistance:
        for (std::size_t i = 1; i < candidates.size(); ++i) {
          ++w.counters().distance_comparisons;
          if (cd_less(candidate_dist[i], candidate_dist[pick])) pick = i;
        }
        break;
    }
    const HalfEdgeId chosen = candidates[pick];
    HalfEdgeId h = e;
    while (h != chosen) h = w.advance(h);
    const auto t = w.cross(chosen);
    if (!t) return w.finish(Outside{chosen});
    e = *t;
    if (w.over_budget()) return w.finish(kBudget);
  }
}

WalkOutcome celestial_walk(const Mesh& m, HalfEdgeId start, Point p, std::size_t budget,
                           const ObtuseBits* memo) {
  if (memo && !memo->matches(m)) throw WalkSetupError("obtuse-bit table belongs to another mesh");
  Walker w(m, start, p, budget);

  auto corner_obtuse = [&](HalfEdgeId first, HalfEdgeId second) {
    if (memo) {
      ++w.counters().memo_lookups;
      return *memo->get(first);
    }
    ++w.counters().obtuse_tests;
    return obtuse(m.origin_point(first), m.target_point(first), m.target_point(second));
  };
  auto left_of_bisector = [&](HalfEdgeId first, HalfEdgeId second) {
    ++w.counters().orientation_tests;
    return left_of_approx_bisector(m.origin_point(first), m.target_point(first),
                                   m.target_point(second), p);
  };

  HalfEdgeId e = start;
  if (w.right_of(e)) {
    const auto t = w.cross(e);
    if (!t) return w.finish(Outside{e});
    e = *t;
  }
  HalfEdgeId e1 = w.advance(e);
  while (e1 != e) {
    if (w.over_budget()) return w.finish(kBudget);
    if (w.right_of(e1)) {
      HalfEdgeId e2 = m.next(e1);
      while (corner_obtuse(e1, e2) && left_of_bisector(e1, e2)) {
        e1 = w.advance(e1, StepAction::ShiftPair);
        e2 = m.next(e1);
        if (w.over_budget()) return w.finish(kBudget);
      }
      const auto t = w.cross(e1);
      if (!t) return w.finish(Outside{e1});
      e = *t;
      e1 = w.advance(e);
    } else {
      e1 = w.advance(e1);
    }
  }
  return w.finish(Located{m.face(e)});
}

WalkOutcome visibility_walk(const Mesh& m, HalfEdgeId start, Point p, VisibilityVariant variant,
                            std::size_t budget) {
  Walker w(m, start, p, budget);
  const bool deterministic = variant.kind == VisibilityVariant::Kind::DeterministicFirst;
  SplitMix64 rng(variant.seed);
  std::unordered_set<HalfEdgeId> entries;

  HalfEdgeId e = start;
  if (w.right_of(e)) {
    const auto t = w.cross(e);
    if (!t) return w.finish(Outside{e});
    e = *t;
  }
  entries.insert(e);
  std::vector<HalfEdgeId> candidates;
  while (true) {
    HalfEdgeId exit = e;
    if (deterministic) {
      HalfEdgeId h = w.advance(e);
      while (h != e && !w.right_of(h)) h = w.advance(h);
      exit = h;
    } else {
      candidates.clear();
      for (HalfEdgeId h = m.next(e); h != e; h = m.next(h)) {
        if (w.right_of(h)) candidates.push_back(h);
      }
      const HalfEdgeId target = candidates.empty() ? e : candidates[rng.below(candidates.size())];
      HalfEdgeId h = w.advance(e);
      while (h != target) h = w.advance(h);
      exit = target;
    }
    if (exit == e) return w.finish(Located{m.face(e)});
    const auto t = w.cross(exit);
    if (!t) return w.finish(Outside{exit});
    e = *t;
    if (deterministic && !entries.insert(e).second) {
      return w.finish(Aborted{AbortReason::CycleDetected});
    }
    if (w.over_budget()) return w.finish(kBudget);
  }
}

WalkOutcome straight_walk(const Mesh& m, HalfEdgeId start, Point p, std::size_t budget) {
  Walker w(m, start, p, budget);
  const Point q = face_centroid(m, m.face(start));

  // Side of a vertex w.r.t. the directed line q -> p; collinear counts as left.
  auto right_of_line = [&](VertexId v) {
    ++w.counters().orientation_tests;
    return orient(q, p, m.point(v)) == Orientation::Right;
  };

  // The exit edge of a face runs from the right side of the line to its left.
  // In the start face every vertex is classified; in later faces the entry
  // edge runs left to right, so the scan starts at its (right) target and
  // ends at its (left) origin.
  HalfEdgeId e = start;
  std::optional<HalfEdgeId> exit;
  {
    const bool start_right = right_of_line(m.origin(e));
    bool origin_right = start_right;
    for (HalfEdgeId h = e;;) {
      const HalfEdgeId n = m.next(h);
      const bool target_right = n == e ? start_right : right_of_line(m.origin(n));
      if (origin_right && !target_right) {
        exit = h;
        break;
      }
      if (n == e) break;
      h = w.advance(h);
      origin_right = target_right;
    }
  }
  while (exit && w.right_of(*exit)) {
    const auto t = w.cross(*exit);
    if (!t) return w.finish(Outside{*exit});
    e = *t;
    if (w.over_budget()) return w.finish(kBudget);
    exit.reset();
    bool origin_right = true;
    for (HalfEdgeId h = w.advance(e);;) {
      const HalfEdgeId n = m.next(h);
      const bool target_right = n != e && right_of_line(m.origin(n));
      if (origin_right && !target_right) {
        exit = h;
        break;
      }
      h = w.advance(h);
      origin_right = target_right;
    }
  }
  return w.finish(Located{m.face(e)});
}

std::string_view to_string(WalkKind k) {
  switch (k) {
    case WalkKind::Celestial:
      return "celestial";
    case WalkKind::Abstract:
      return "abstract";
    case WalkKind::Visibility:
      return "visibility";
    case WalkKind::Straight:
      return "straight";
  }
  return "?";
}

std::optional<WalkKind> parse_walk_kind(std::string_view name) {
  for (WalkKind k : {WalkKind::Celestial, WalkKind::Abstract, WalkKind::Visibility, WalkKind::Straight}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(StepAction a) {
  switch (a) {
    case StepAction::CrossTwin:
      return "CrossTwin";
    case StepAction::AdvanceNext:
      return "AdvanceNext";
    case StepAction::ShiftPair:
      return "ShiftPair";
  }
  return "?";
}

std::string_view to_string(SelectorStrategy::Kind k) {
  switch (k) {
    case SelectorStrategy::Kind::FirstCandidate:
      return "first";
    case SelectorStrategy::Kind::SeededRandom:
      return "random";
    case SelectorStrategy::Kind::GreedyMinDistance:
      return "greedy";
  }
  return "?";
}

std::string WalkSpec::label() const {
  std::string out(to_string(kind));
  if (kind == WalkKind::Abstract) out += "-" + std::string(to_string(selector.kind));
  if (kind == WalkKind::Visibility && visibility.kind == VisibilityVariant::Kind::Stochastic) {
    out += "-stochastic";
  }
  if (kind == WalkKind::Celestial && memo_obtuse) out += "-memo";
  return out;
}

std::optional<WalkSpec> parse_walk_spec(std::string_view label, std::uint64_t seed) {
  WalkSpec spec;
  const auto dash = label.find('-');
  const auto kind = parse_walk_kind(label.substr(0, dash));
  if (!kind) return std::nullopt;
  spec.kind = *kind;
  const std::string_view suffix = dash == std::string_view::npos ? "" : label.substr(dash + 1);
  switch (spec.kind) {
    case WalkKind::Celestial:
      if (suffix == "memo") {
        spec.memo_obtuse = true;
      } else if (!suffix.empty()) {
        return std::nullopt;
      }
      break;
    case WalkKind::Abstract:
      if (suffix.empty() || suffix == "first") {
        spec.selector = SelectorStrategy::first();
      } else if (suffix == "random") {
        spec.selector = SelectorStrategy::random(seed);
      } else if (suffix == "greedy") {
        spec.selector = SelectorStrategy::greedy();
      } else {
        return std::nullopt;
      }
      break;
    case WalkKind::Visibility:
      if (suffix == "stochastic") {
        spec.visibility = VisibilityVariant::stochastic(seed);
      } else if (!suffix.empty()) {
        return std::nullopt;
      }
      break;
    case WalkKind::Straight:
      if (!suffix.empty()) return std::nullopt;
      break;
  }
  return spec;
}

WalkOutcome run_walk(const Mesh& m, const WalkSpec& spec, HalfEdgeId start, Point p,
                     std::size_t budget, const ObtuseBits* memo) {
  switch (spec.kind) {
    case WalkKind::Celestial:
      return celestial_walk(m, start, p, budget, spec.memo_obtuse ? memo : nullptr);
    case WalkKind::Abstract:
      return abstract_walk(m, start, p, spec.selector, budget);
    case WalkKind::Visibility:
      return visibility_walk(m, start, p, spec.visibility, budget);
    case WalkKind::Straight:
      return straight_walk(m, start, p, budget);
  }
  throw InvalidInputError("unknown walk kind");
}

}  // namespace celestial
