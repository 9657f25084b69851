#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "celestial/geometry.hpp"

namespace celestial {

struct ClosestPoint {
  Point point;
  double squared_distance = 0.0;
};

/// Closest point of the closed segment [a, b] to p.
ClosestPoint closest_point_on_segment(Point a, Point b, Point p);

/// Distance pair [d, alpha] of a segment to a query point.
///
/// `squared_distance` and `wide_angle` are rounded values for reporting.
/// Ordering never reads them: `compare` works on the segment and query
/// coordinates with exact arithmetic, so ties and splits are decided
/// exactly. The endpoints are stored in lexicographic order, which makes
/// the value independent of the half-edge direction.
class CelestialDistance {
 public:
  enum class Region {
    OnSegment,  ///< p on the closed segment, d = 0 and alpha = 0
    Interior,   ///< orthogonal projection falls strictly inside, alpha = pi/2
    Endpoint,   ///< closest point is `anchor()`, alpha in [pi/2, pi]
  };

  double squared_distance() const { return squared_distance_; }
  double wide_angle() const { return wide_angle_; }
  Region region() const { return region_; }
  Point query() const { return query_; }
  /// Closest endpoint when region() == Endpoint, otherwise the first endpoint.
  Point anchor() const { return anchor_; }
  Point other() const { return other_; }

  friend CelestialDistance celestial_distance(Point a, Point b, Point p);
  friend int compare_squared_distance(const CelestialDistance& lhs, const CelestialDistance& rhs);
  friend int compare(const CelestialDistance& lhs, const CelestialDistance& rhs);

  friend bool operator==(const CelestialDistance& lhs, const CelestialDistance& rhs) {
    return compare(lhs, rhs) == 0;
  }

 private:
  Region region_ = Region::OnSegment;
  Point anchor_;
  Point other_;
  Point query_;
  double squared_distance_ = 0.0;
  double wide_angle_ = 0.0;
  // Conservative enclosure of the squared distance used as a filter.
  double d2_lo_ = 0.0;
  double d2_hi_ = 0.0;
};

CelestialDistance celestial_distance(Point a, Point b, Point p);

/// Exact three-way comparison of the distance component only.
int compare_squared_distance(const CelestialDistance& lhs, const CelestialDistance& rhs);

/// Exact three-way lexicographic comparison of [d, alpha].
int compare(const CelestialDistance& lhs, const CelestialDistance& rhs);

inline bool cd_less(const CelestialDistance& lhs, const CelestialDistance& rhs) {
  return compare(lhs, rhs) < 0;
}

enum class DistanceMetric { Euclidean, Celestial };

/// Indices of all perimeter edges at minimum distance from p. The
/// perimeter must be a simple, strictly convex, counter-clockwise polygon
/// given as consecutive (origin, target) pairs.
std::vector<std::size_t> closest_edge_of_face(std::span<const std::pair<Point, Point>> perimeter,
                                              Point p, DistanceMetric metric);

/// True when the closed polygon is simple, strictly convex and CCW.
bool is_strictly_convex_ccw(std::span<const Point> polygon);

}  // namespace celestial
