#include <json.hpp>

#include "celestial/mesh_io.hpp"
#include "celestial/walks.hpp"

namespace celestial {
namespace {

using ordered_json = nlohmann::ordered_json;

StepAction parse_action(const std::string& s) {
  for (StepAction a : {StepAction::CrossTwin, StepAction::AdvanceNext, StepAction::ShiftPair}) {
    if (to_string(a) == s) return a;
  }
  throw FormatError("unknown step action '" + s + "'");
}

}  // namespace

std::string format_trace(const TraceDocument& doc) {
  ordered_json j;
  j["walk"] = doc.walk;
  j["start"] = doc.start.value;
  j["query"] = {doc.query.x, doc.query.y};

  ordered_json result;
  if (const auto* l = std::get_if<Located>(&doc.result)) {
    result["kind"] = "Located";
    result["face"] = l->face.value;
  } else if (const auto* o = std::get_if<Outside>(&doc.result)) {
    result["kind"] = "Outside";
    result["exit"] = o->exit.value;
  } else {
    result["kind"] = "Aborted";
    result["reason"] = std::get<Aborted>(doc.result).reason == AbortReason::CycleDetected
                           ? "CycleDetected"
                           : "BudgetExhausted";
  }
  j["result"] = result;

  const WalkCounters& c = doc.trace.counters;
  j["counters"] = {{"orientation_tests", c.orientation_tests},
                   {"obtuse_tests", c.obtuse_tests},
                   {"memo_lookups", c.memo_lookups},
                   {"distance_comparisons", c.distance_comparisons}};
  auto faces = ordered_json::array();
  for (FaceId f : doc.trace.visited_faces) faces.push_back(f.value);
  j["visited_faces"] = faces;
  auto steps = ordered_json::array();
  for (const WalkStep& s : doc.trace.steps) {
    steps.push_back({{"edge", s.edge.value}, {"action", std::string(to_string(s.action))}});
  }
  j["steps"] = steps;
  return j.dump(1) + "\n";
}

TraceDocument parse_trace(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    TraceDocument doc;
    doc.walk = j.at("walk").get<std::string>();
    doc.start = HalfEdgeId(j.at("start").get<std::uint32_t>());
    doc.query = {j.at("query").at(0).get<double>(), j.at("query").at(1).get<double>()};
    const auto& r = j.at("result");
    const auto kind = r.at("kind").get<std::string>();
    if (kind == "Located") {
      doc.result = Located{FaceId(r.at("face").get<std::uint32_t>())};
    } else if (kind == "Outside") {
      doc.result = Outside{HalfEdgeId(r.at("exit").get<std::uint32_t>())};
    } else if (kind == "Aborted") {
      doc.result = Aborted{r.at("reason").get<std::string>() == "CycleDetected"
                               ? AbortReason::CycleDetected
                               : AbortReason::BudgetExhausted};
    } else {
      throw FormatError("unknown result kind '" + kind + "'");
    }
    const auto& c = j.at("counters");
    doc.trace.counters = {c.at("orientation_tests").get<std::uint64_t>(),
                          c.at("obtuse_tests").get<std::uint64_t>(),
                          c.at("memo_lookups").get<std::uint64_t>(),
                          c.at("distance_comparisons").get<std::uint64_t>()};
    for (const auto& f : j.at("visited_faces")) doc.trace.visited_faces.emplace_back(f.get<std::uint32_t>());
    for (const auto& s : j.at("steps")) {
      doc.trace.steps.push_back({HalfEdgeId(s.at("edge").get<std::uint32_t>()),
                                 parse_action(s.at("action").get<std::string>())});
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed trace: ") + e.what());
  }
}

}  // namespace celestial
