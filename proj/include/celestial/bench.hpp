#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "celestial/generators.hpp"
#include "celestial/walks.hpp"

namespace celestial {

enum class MeshFamily { Hex, Delaunay, Flipped, Chords };

std::string_view to_string(MeshFamily f);
std::optional<MeshFamily> parse_mesh_family(std::string_view name);

/// Size-parameterized instance of a family: an n x n hex grid, n uniform
/// points (flipped: followed by n random flips), or n chord splits.
Mesh make_family_mesh(MeshFamily family, std::size_t n, std::uint64_t seed);

/// Least-squares slope of log(y) against log(x); needs at least three points.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// Fraction of interior perimeter corners that are obtuse.
double obtuse_fraction(const Mesh& m);

/// Raw outcome of one walk in a batch.
struct QueryRecord {
  std::size_t index = 0;
  HalfEdgeId start;
  Point query;
  WalkResult result = Located{};
  /// Located and the located face closed-contains the query.
  bool correct = false;
  std::size_t visited_faces = 0;
  std::size_t visited_halfedges = 0;
  WalkCounters counters;
  std::optional<WalkTrace> trace;
};

struct StrategyAggregate {
  std::size_t queries = 0;
  std::size_t failures = 0;
  double mean_faces = 0.0;
  double median_faces = 0.0;
  double std_faces = 0.0;
  std::size_t max_faces = 0;
  /// Total orientation tests over total visited half-edges.
  double mean_orient_per_he = 0.0;
  double mean_obtuse = 0.0;

  friend bool operator==(const StrategyAggregate&, const StrategyAggregate&) = default;
};

StrategyAggregate aggregate(std::span<const QueryRecord> records);

struct StrategyReport {
  WalkSpec spec;
  StrategyAggregate summary;
  std::vector<QueryRecord> records;
};

struct BatchReport {
  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<StrategyReport> strategies;
};

struct BatchOptions {
  std::size_t queries = 1000;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool keep_traces = false;
  std::size_t budget = kDefaultBudget;
  std::string family = "custom";
  /// Size parameter reported with the batch; 0 means the vertex count.
  std::size_t n = 0;
};

/// Queries uniform in the inner 80% of the bounding box, starts uniform over
/// interior half-edges; every strategy runs on the same (start, query) pairs.
/// Results do not depend on the thread count.
BatchReport run_batch(const Mesh& m, std::span<const WalkSpec> strategies, const BatchOptions& options);

struct ScalingRow {
  std::size_t n = 0;
  double mean_faces = 0.0;
  double std_faces = 0.0;
  BatchReport report;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  /// Least-squares slope of log(mean visited faces) against log(n).
  double exponent = 0.0;
};

/// Celestial walks (memoized obtuse bits) on Delaunay meshes of n uniform
/// points for each size. Needs at least three strictly ascending sizes.
/// Size i uses the (2i)-th and (2i+1)-th SplitMix64 outputs of `seed` as
/// mesh and batch seeds.
ScalingResult scaling_experiment(std::span<const std::size_t> sizes, std::size_t queries_per_n,
                                 std::uint64_t seed, std::size_t threads = 1);

inline constexpr std::string_view kCsvHeader =
    "family,n,strategy,queries,mean_faces,std_faces,mean_orient_per_he,mean_obtuse,failures,seed";

/// Header line plus one row per (batch, strategy), in the given order.
std::string format_csv(std::span<const BatchReport> reports);

}  // namespace celestial
