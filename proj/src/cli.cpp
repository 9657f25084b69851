#include "celestial/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "celestial/bench.hpp"
#include "celestial/generators.hpp"
#include "celestial/mesh_io.hpp"
#include "celestial/rng.hpp"
#include "celestial/svg.hpp"
#include "celestial/walks.hpp"

namespace celestial {
namespace {

struct GenArgs {
  std::string family = "hex";
  std::size_t rows = 10, cols = 10;
  double edge_len = 1.0;
  std::size_t points = 100, flips = 100, splits = 50;
  std::uint64_t seed = 1;
  bool close_hull = false;
  std::string out;
};

struct LocateArgs {
  std::string mesh, point, walk = "celestial", selector = "first", trace;
  std::optional<std::uint32_t> start;
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultBudget;
  bool memo = false;
};

struct CompareArgs {
  std::string mesh, point, walks = "celestial,visibility,abstract,straight", out_csv;
  std::optional<std::uint32_t> start;
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultBudget;
};

struct BenchArgs {
  std::string family = "delaunay", out_csv, keep_traces, walks = "celestial-memo";
  std::vector<std::size_t> sizes{100, 1000, 10000};
  std::size_t queries = 200, threads = 1;
  std::uint64_t seed = 1;
};

struct SvgArgs {
  std::string mesh, trace, out;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Command-line problems detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Point point_arg(const std::string& text) {
  try {
    return parse_point(text);
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
}

WalkSpec spec_for(const std::string& walk, const std::string& selector, std::uint64_t seed) {
  const auto kind = parse_walk_kind(walk);
  if (!kind) throw UsageError("unknown walk '" + walk + "'");
  std::string label = walk;
  if (*kind == WalkKind::Abstract) {
    label += "-" + selector;
  } else if (*kind == WalkKind::Visibility && selector == "random") {
    label += "-stochastic";
  }
  auto spec = parse_walk_spec(label, seed);
  if (!spec) throw UsageError("unknown selector '" + selector + "'");
  return *spec;
}

HalfEdgeId start_for(const std::optional<std::uint32_t>& flag, const MeshDocument& doc) {
  if (flag) return HalfEdgeId(*flag);
  return doc.start.value_or(HalfEdgeId(0u));
}

int exit_for(const WalkResult& r) {
  if (is_aborted(r)) return kExitAborted;
  return is_located(r) ? kExitOk : kExitGeometry;
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  MeshDocument doc;
  if (a.family == "hex") {
    Mesh m = hex_grid(a.rows, a.cols, a.edge_len);
    doc = to_document(a.close_hull ? close_convex_hull(m) : m);
  } else if (a.family == "delaunay") {
    doc = to_document(random_delaunay(a.points, a.seed));
  } else if (a.family == "flipped") {
    doc = to_document(random_flipped(a.points, a.flips, a.seed));
  } else if (a.family == "chords") {
    doc = to_document(chord_split_subdivision(a.splits, a.seed));
  } else {
    LoopSearchOptions opt;
    opt.seed = a.seed;
    auto inst = find_visibility_loop_instance(opt);
    if (!inst) throw Error("no visibility-walk loop instance found");
    doc = to_document(inst->mesh);
    doc.start = inst->start;
    doc.query = inst->query;
    out << "loop instance after " << inst->meshes_tried << " meshes\n";
  }
  write_mesh_file(a.out, doc);
  out << "wrote " << a.out << ": " << doc.vertices.size() << " vertices, " << doc.faces.size() << " faces\n";
  return kExitOk;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  const MeshDocument doc = read_mesh_file(path);
  const Mesh m = build_mesh(doc);
  const auto problems = validate_mesh(m);
  for (const auto& p : problems) err << p << "\n";
  if (!problems.empty()) return kExitGeometry;
  out << "valid: " << m.num_vertices() << " vertices, " << m.num_halfedges() << " half-edges, "
      << m.num_faces() - 1 << " faces\n";
  return kExitOk;
}

int cmd_locate(const LocateArgs& a, std::ostream& out) {
  const MeshDocument doc = read_mesh_file(a.mesh);
  const Mesh m = build_mesh(doc);
  const Point p = point_arg(a.point);
  const HalfEdgeId start = start_for(a.start, doc);
  WalkSpec spec = spec_for(a.walk, a.selector, a.seed);
  spec.memo_obtuse = spec.memo_obtuse || (a.memo && spec.kind == WalkKind::Celestial);
  std::optional<ObtuseBits> memo;
  if (spec.memo_obtuse) memo = precompute_obtuse_bits(m);
  const WalkOutcome o = run_walk(m, spec, start, p, a.budget, memo ? &*memo : nullptr);
  out << describe(o.result) << "\n";
  const WalkCounters& c = o.trace.counters;
  out << "visited_faces " << o.trace.visited_faces.size() << ", orientation_tests " << c.orientation_tests
      << ", obtuse_tests " << c.obtuse_tests << ", memo_lookups " << c.memo_lookups << "\n";
  if (!a.trace.empty()) write_text_file(a.trace, format_trace({spec.label(), start, p, o.result, o.trace}));
  return exit_for(o.result);
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const MeshDocument doc = read_mesh_file(a.mesh);
  const Mesh m = build_mesh(doc);
  const Point p = a.point.empty() && doc.query ? *doc.query : point_arg(a.point);
  const HalfEdgeId start = start_for(a.start, doc);
  std::vector<WalkSpec> specs;
  for (const std::string& label : split_list(a.walks)) {
    auto spec = parse_walk_spec(label, a.seed);
    if (!spec) throw UsageError("unknown walk '" + label + "'");
    specs.push_back(*spec);
  }
  if (specs.empty()) throw UsageError("--walks is empty");
  const ObtuseBits memo = precompute_obtuse_bits(m);

  std::string csv = "walk,result,visited_faces,visited_halfedges,orientation_tests,obtuse_tests,memo_lookups,"
                    "distance_comparisons\n";
  bool aborted = false, missed = false;
  for (const WalkSpec& spec : specs) {
    const WalkOutcome o = run_walk(m, spec, start, p, a.budget, &memo);
    aborted = aborted || is_aborted(o.result);
    missed = missed || !is_located(o.result);
    const WalkCounters& c = o.trace.counters;
    out << spec.label() << ": " << describe(o.result) << " (faces " << o.trace.visited_faces.size()
        << ", orientation_tests " << c.orientation_tests << ")\n";
    csv += spec.label() + "," + describe(o.result) + "," + std::to_string(o.trace.visited_faces.size()) + "," +
           std::to_string(o.trace.visited_halfedges()) + "," + std::to_string(c.orientation_tests) + "," +
           std::to_string(c.obtuse_tests) + "," + std::to_string(c.memo_lookups) + "," +
           std::to_string(c.distance_comparisons) + "\n";
  }
  if (!a.out_csv.empty()) write_text_file(a.out_csv, csv);
  if (aborted) return kExitAborted;
  return missed ? kExitGeometry : kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const auto family = parse_mesh_family(a.family);
  if (!family) throw UsageError("unknown family '" + a.family + "'");
  std::vector<WalkSpec> specs;
  for (const std::string& label : split_list(a.walks)) {
    auto spec = parse_walk_spec(label, a.seed);
    if (!spec) throw UsageError("unknown walk '" + label + "'");
    specs.push_back(*spec);
  }
  if (specs.empty()) throw UsageError("--walks is empty");
  if (a.sizes.empty()) throw UsageError("--sizes is empty");

  SplitMix64 seeds(a.seed);
  std::vector<BatchReport> reports;
  for (std::size_t n : a.sizes) {
    const Mesh m = make_family_mesh(*family, n, seeds.next());
    BatchOptions opt;
    opt.queries = a.queries;
    opt.seed = seeds.next();
    opt.threads = a.threads;
    opt.keep_traces = false;
    opt.family = std::string(to_string(*family));
    opt.n = n;
    reports.push_back(run_batch(m, specs, opt));
  }

  const std::string csv = format_csv(reports);
  if (a.out_csv.empty()) {
    out << csv;
  } else {
    write_text_file(a.out_csv, csv);
  }
  if (!a.keep_traces.empty()) {
    std::string raw =
        "family,n,strategy,index,start,qx,qy,result,visited_faces,visited_halfedges,orientation_tests,"
        "obtuse_tests,memo_lookups,distance_comparisons\n";
    for (const BatchReport& b : reports) {
      for (const StrategyReport& s : b.strategies) {
        for (const QueryRecord& r : s.records) {
          const WalkCounters& c = r.counters;
          raw += b.family + "," + std::to_string(b.n) + "," + s.spec.label() + "," + std::to_string(r.index) +
                 "," + std::to_string(r.start.value) + "," + format_double(r.query.x) + "," +
                 format_double(r.query.y) + "," + (r.correct ? describe(r.result) : "Failed:" + describe(r.result)) +
                 "," + std::to_string(r.visited_faces) + "," + std::to_string(r.visited_halfedges) + "," +
                 std::to_string(c.orientation_tests) + "," + std::to_string(c.obtuse_tests) + "," +
                 std::to_string(c.memo_lookups) + "," + std::to_string(c.distance_comparisons) + "\n";
        }
      }
    }
    write_text_file(a.keep_traces, raw);
  }
  if (reports.size() >= 3) {
    std::ostream& info = a.out_csv.empty() ? err : out;
    for (std::size_t k = 0; k < specs.size(); ++k) {
      std::vector<double> xs, ys;
      for (const BatchReport& b : reports) {
        xs.push_back(static_cast<double>(b.n));
        ys.push_back(b.strategies[k].summary.mean_faces);
      }
      info << specs[k].label() << " exponent " << format_double(fit_loglog_slope(xs, ys)) << "\n";
    }
  }
  return kExitOk;
}

int cmd_trace_svg(const SvgArgs& a, std::ostream& out) {
  const Mesh m = build_mesh(read_mesh_file(a.mesh));
  const TraceDocument t = parse_trace(read_text_file(a.trace));
  write_text_file(a.out, render_trace_svg(m, t));
  out << "wrote " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point location by walking in convex planar subdivisions"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a mesh file");
  g->add_option("--family", gen.family)->check(CLI::IsMember({"hex", "delaunay", "flipped", "chords", "loop"}));
  g->add_option("--rows", gen.rows)->check(CLI::PositiveNumber);
  g->add_option("--cols", gen.cols)->check(CLI::PositiveNumber);
  g->add_option("--edge-len", gen.edge_len)->check(CLI::PositiveNumber);
  g->add_option("--points", gen.points);
  g->add_option("--flips", gen.flips);
  g->add_option("--splits", gen.splits);
  g->add_option("--seed", gen.seed);
  g->add_flag("--close-hull", gen.close_hull, "Fill the hex grid's boundary notches up to its convex hull");
  g->add_option("--out", gen.out)->required();

  std::string validate_path;
  auto* v = app.add_subcommand("validate", "Check a mesh file");
  v->add_option("path", validate_path)->required();

  LocateArgs loc;
  auto* l = app.add_subcommand("locate", "Locate a point with one walk");
  l->add_option("--mesh", loc.mesh)->required();
  l->add_option("--point", loc.point, "x,y")->required();
  l->add_option("--start", loc.start, "Start half-edge (default: the file's start, else 0)");
  l->add_option("--walk", loc.walk)->check(CLI::IsMember({"celestial", "visibility", "abstract", "straight"}));
  l->add_option("--selector", loc.selector)->check(CLI::IsMember({"first", "random", "greedy"}));
  l->add_option("--seed", loc.seed);
  l->add_option("--budget", loc.budget, "Move budget (0: 10 per half-edge)");
  l->add_option("--trace", loc.trace, "Write the trace to this file");
  l->add_flag("--memo-obtuse", loc.memo);

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Run several walks on the same query");
  c->add_option("--mesh", cmp.mesh)->required();
  c->add_option("--point", cmp.point, "x,y (default: the file's query)");
  c->add_option("--start", cmp.start);
  c->add_option("--walks", cmp.walks);
  c->add_option("--seed", cmp.seed);
  c->add_option("--budget", cmp.budget);
  c->add_option("--out-csv", cmp.out_csv);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Batch experiments over mesh sizes");
  b->add_option("--family", bench.family)->check(CLI::IsMember({"hex", "delaunay", "flipped", "chords"}));
  b->add_option("--sizes", bench.sizes)->delimiter(',');
  b->add_option("--queries", bench.queries)->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed);
  b->add_option("--walks", bench.walks);
  b->add_option("--out-csv", bench.out_csv);
  b->add_option("--keep-traces", bench.keep_traces, "Write per-query records to this CSV file");
  b->add_option("--threads", bench.threads)->check(CLI::PositiveNumber);

  SvgArgs svg;
  auto* s = app.add_subcommand("trace-svg", "Draw a trace over its mesh");
  s->add_option("--mesh", svg.mesh)->required();
  s->add_option("--trace", svg.trace)->required();
  s->add_option("--out", svg.out)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, out);
    if (v->parsed()) return cmd_validate(validate_path, out, err);
    if (l->parsed()) return cmd_locate(loc, out);
    if (c->parsed()) return cmd_compare(cmp, out);
    if (b->parsed()) return cmd_bench(bench, out, err);
    if (s->parsed()) return cmd_trace_svg(svg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitGeometry;
  }
  return kExitUsage;
}

}  // namespace celestial
