#include "celestial/bench.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "celestial/mesh_io.hpp"
#include "celestial/predicates.hpp"
#include "celestial/rng.hpp"

namespace celestial {

std::string_view to_string(MeshFamily f) {
  switch (f) {
    case MeshFamily::Hex:
      return "hex";
    case MeshFamily::Delaunay:
      return "delaunay";
    case MeshFamily::Flipped:
      return "flipped";
    case MeshFamily::Chords:
      return "chords";
  }
  return "?";
}

std::optional<MeshFamily> parse_mesh_family(std::string_view name) {
  for (MeshFamily f : {MeshFamily::Hex, MeshFamily::Delaunay, MeshFamily::Flipped, MeshFamily::Chords}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

Mesh make_family_mesh(MeshFamily family, std::size_t n, std::uint64_t seed) {
  switch (family) {
    case MeshFamily::Hex:
      return hex_grid(n, n, 1.0);
    case MeshFamily::Delaunay:
      return random_delaunay(n, seed);
    case MeshFamily::Flipped:
      return random_flipped(n, n, seed);
    case MeshFamily::Chords:
      return chord_split_subdivision(n, seed);
  }
  throw InvalidInputError("unknown mesh family");
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) throw InvalidInputError("log-log fit needs at least three points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidInputError("log-log fit needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(x.size());
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw InvalidInputError("log-log fit needs distinct sizes");
  return (k * sxy - sx * sy) / denom;
}

double obtuse_fraction(const Mesh& m) {
  std::size_t corners = 0;
  std::size_t obtuse_corners = 0;
  for (std::size_t i = 0; i < m.num_halfedges(); ++i) {
    const HalfEdgeId h(i);
    if (m.is_outer(m.face(h))) continue;
    ++corners;
    if (obtuse(m.origin_point(h), m.target_point(h), m.target_point(m.next(h)))) ++obtuse_corners;
  }
  return corners == 0 ? 0.0 : static_cast<double>(obtuse_corners) / static_cast<double>(corners);
}

StrategyAggregate aggregate(std::span<const QueryRecord> records) {
  StrategyAggregate a;
  a.queries = records.size();
  if (records.empty()) return a;
  std::vector<double> faces;
  faces.reserve(records.size());
  std::uint64_t orient_total = 0, he_total = 0, obtuse_total = 0;
  for (const QueryRecord& r : records) {
    if (!r.correct) ++a.failures;
    faces.push_back(static_cast<double>(r.visited_faces));
    a.max_faces = std::max(a.max_faces, r.visited_faces);
    orient_total += r.counters.orientation_tests;
    he_total += r.visited_halfedges;
    obtuse_total += r.counters.obtuse_tests;
  }
  const double count = static_cast<double>(records.size());
  double sum = 0.0;
  for (double f : faces) sum += f;
  a.mean_faces = sum / count;
  double sq = 0.0;
  for (double f : faces) sq += (f - a.mean_faces) * (f - a.mean_faces);
  a.std_faces = std::sqrt(sq / count);
  std::sort(faces.begin(), faces.end());
  const std::size_t mid = faces.size() / 2;
  a.median_faces = faces.size() % 2 ? faces[mid] : 0.5 * (faces[mid - 1] + faces[mid]);
  a.mean_orient_per_he = he_total == 0 ? 0.0 : static_cast<double>(orient_total) / static_cast<double>(he_total);
  a.mean_obtuse = static_cast<double>(obtuse_total) / count;
  return a;
}

BatchReport run_batch(const Mesh& m, std::span<const WalkSpec> strategies, const BatchOptions& options) {
  if (options.queries == 0) throw InvalidInputError("a batch needs at least one query");
  std::vector<HalfEdgeId> interior;
  for (std::size_t h = 0; h < m.num_halfedges(); ++h) {
    if (!m.is_outer(m.face(HalfEdgeId(h)))) interior.emplace_back(h);
  }
  if (interior.empty()) throw InvalidInputError("mesh has no interior half-edges");

  const BoundingBox box = bounding_box(m);
  const double mx = 0.1 * box.width();
  const double my = 0.1 * box.height();
  SplitMix64 rng(options.seed);
  std::vector<std::pair<HalfEdgeId, Point>> pairs(options.queries);
  for (auto& [start, p] : pairs) {
    start = interior[rng.below(interior.size())];
    p = {rng.uniform(box.xmin + mx, box.xmax - mx), rng.uniform(box.ymin + my, box.ymax - my)};
  }

  std::optional<ObtuseBits> memo;
  if (std::any_of(strategies.begin(), strategies.end(), [](const WalkSpec& s) { return s.memo_obtuse; })) {
    memo = precompute_obtuse_bits(m);
  }

  BatchReport report;
  report.family = options.family;
  report.n = options.n == 0 ? m.num_vertices() : options.n;
  report.seed = options.seed;
  for (const WalkSpec& spec : strategies) {
    StrategyReport sr;
    sr.spec = spec;
    sr.records.resize(pairs.size());
    auto run_range = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const auto& [start, p] = pairs[i];
        WalkOutcome out = run_walk(m, spec, start, p, options.budget, memo ? &*memo : nullptr);
        QueryRecord& r = sr.records[i];
        r.index = i;
        r.start = start;
        r.query = p;
        r.result = out.result;
        const auto* loc = std::get_if<Located>(&out.result);
        r.correct = loc && point_in_face(m, loc->face, p);
        r.visited_faces = out.trace.visited_faces.size();
        r.visited_halfedges = out.trace.visited_halfedges();
        r.counters = out.trace.counters;
        if (options.keep_traces) r.trace = std::move(out.trace);
      }
    };
    const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, pairs.size());
    if (threads == 1) {
      run_range(0, pairs.size());
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (pairs.size() + threads - 1) / threads;
      for (std::size_t lo = 0; lo < pairs.size(); lo += chunk) {
        pool.emplace_back(run_range, lo, std::min(pairs.size(), lo + chunk));
      }
    }
    sr.summary = aggregate(sr.records);
    report.strategies.push_back(std::move(sr));
  }
  return report;
}

ScalingResult scaling_experiment(std::span<const std::size_t> sizes, std::size_t queries_per_n,
                                 std::uint64_t seed, std::size_t threads) {
  if (sizes.size() < 3) throw InvalidInputError("scaling fit needs at least three sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 3 || (i > 0 && sizes[i] <= sizes[i - 1])) {
      throw InvalidInputError("scaling sizes must be ascending and at least 3");
    }
  }
  const WalkSpec celestial{WalkKind::Celestial, {}, {}, true};
  SplitMix64 seeds(seed);
  ScalingResult result;
  for (std::size_t n : sizes) {
    const Mesh m = random_delaunay(n, seeds.next());
    BatchOptions opt;
    opt.queries = queries_per_n;
    opt.seed = seeds.next();
    opt.threads = threads;
    opt.family = "delaunay";
    opt.n = n;
    BatchReport report = run_batch(m, std::span(&celestial, 1), opt);
    const StrategyAggregate& s = report.strategies.front().summary;
    result.rows.push_back({n, s.mean_faces, s.std_faces, std::move(report)});
  }

  std::vector<double> xs, ys;
  for (const ScalingRow& row : result.rows) {
    xs.push_back(static_cast<double>(row.n));
    ys.push_back(row.mean_faces);
  }
  result.exponent = fit_loglog_slope(xs, ys);
  return result;
}

std::string format_csv(std::span<const BatchReport> reports) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const BatchReport& b : reports) {
    for (const StrategyReport& s : b.strategies) {
      const StrategyAggregate& a = s.summary;
      out += b.family + ',' + std::to_string(b.n) + ',' + s.spec.label() + ',' + std::to_string(a.queries) +
             ',' + format_double(a.mean_faces) + ',' + format_double(a.std_faces) + ',' +
             format_double(a.mean_orient_per_he) + ',' + format_double(a.mean_obtuse) + ',' +
             std::to_string(a.failures) + ',' + std::to_string(b.seed) + '\n';
    }
  }
  return out;
}

}  // namespace celestial
