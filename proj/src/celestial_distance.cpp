#include "celestial/celestial_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "celestial/predicates.hpp"
#include "expansion.hpp"

namespace celestial {
namespace {

using detail::Expansion;

constexpr double kRelSlack = 1e-14;
constexpr double kAbsSlack = 8.0 * std::numeric_limits<double>::min();
constexpr double kCrossErrBound = 4.0 * std::numeric_limits<double>::epsilon();

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct Ratio {
  Expansion num;
  Expansion den;
};

int compare_ratios(const Ratio& lhs, const Ratio& rhs) {
  return (lhs.num * rhs.den - rhs.num * lhs.den).sign();
}

Expansion squared_norm(Point from, Point to) {
  const Expansion dx = Expansion::difference(to.x, from.x);
  const Expansion dy = Expansion::difference(to.y, from.y);
  return dx * dx + dy * dy;
}

}  // namespace

ClosestPoint closest_point_on_segment(Point a, Point b, Point p) {
  require_finite(a);
  require_finite(b);
  require_finite(p);
  if (a == b) throw DegenerateEdgeError("zero-length segment");
  if (dot_sign(a, b, a, p) <= 0) {
    const Point d = p - a;
    return {a, d.x * d.x + d.y * d.y};
  }
  if (dot_sign(b, a, b, p) <= 0) {
    const Point d = p - b;
    return {b, d.x * d.x + d.y * d.y};
  }
  const Point v = b - a;
  const Point w = p - a;
  const double len2 = v.x * v.x + v.y * v.y;
  const double t = (v.x * w.x + v.y * w.y) / len2;
  const Point q = a + t * v;
  const double cross = v.x * w.y - v.y * w.x;
  return {q, cross * cross / len2};
}

CelestialDistance celestial_distance(Point a, Point b, Point p) {
  require_finite(a);
  require_finite(b);
  require_finite(p);
  if (a == b) throw DegenerateEdgeError("zero-length segment");

  CelestialDistance cd;
  const Point lo = lex_less(a, b) ? a : b;
  const Point hi = lex_less(a, b) ? b : a;
  cd.query_ = p;

  auto set_endpoint = [&](Point anchor, Point other) {
    cd.anchor_ = anchor;
    cd.other_ = other;
    if (p == anchor) {
      cd.region_ = CelestialDistance::Region::OnSegment;
      return;
    }
    cd.region_ = CelestialDistance::Region::Endpoint;
    const Point w = p - anchor;
    const Point v = other - anchor;
    const double d2 = w.x * w.x + w.y * w.y;
    cd.squared_distance_ = d2;
    cd.d2_lo_ = std::max(0.0, d2 * (1.0 - kRelSlack) - kAbsSlack);
    cd.d2_hi_ = d2 * (1.0 + kRelSlack) + kAbsSlack;
    const double cos_narrow =
        std::fabs(v.x * w.x + v.y * w.y) / (std::hypot(v.x, v.y) * std::hypot(w.x, w.y));
    cd.wide_angle_ = std::numbers::pi - std::acos(std::min(1.0, cos_narrow));
  };

  if (dot_sign(lo, hi, lo, p) <= 0) {
    set_endpoint(lo, hi);
    return cd;
  }
  if (dot_sign(hi, lo, hi, p) <= 0) {
    set_endpoint(hi, lo);
    return cd;
  }

  cd.anchor_ = lo;
  cd.other_ = hi;
  if (orient(lo, hi, p) == Orientation::Collinear) {
    cd.region_ = CelestialDistance::Region::OnSegment;
    return cd;
  }
  cd.region_ = CelestialDistance::Region::Interior;
  const Point v = hi - lo;
  const Point w = p - lo;
  const double left = v.x * w.y;
  const double right = v.y * w.x;
  const double cross = std::fabs(left - right);
  const double err = kCrossErrBound * (std::fabs(left) + std::fabs(right));
  const double len2 = v.x * v.x + v.y * v.y;
  const double c_lo = std::max(0.0, cross - err);
  const double c_hi = cross + err;
  cd.squared_distance_ = cross * cross / len2;
  cd.d2_lo_ = std::max(0.0, c_lo * c_lo / len2 * (1.0 - kRelSlack) - kAbsSlack);
  cd.d2_hi_ = c_hi * c_hi / len2 * (1.0 + kRelSlack) + kAbsSlack;
  cd.wide_angle_ = std::numbers::pi / 2.0;
  return cd;
}

int compare_squared_distance(const CelestialDistance& lhs, const CelestialDistance& rhs) {
  using Region = CelestialDistance::Region;
  const bool lhs_zero = lhs.region_ == Region::OnSegment;
  const bool rhs_zero = rhs.region_ == Region::OnSegment;
  if (lhs_zero || rhs_zero) return static_cast<int>(rhs_zero) - static_cast<int>(lhs_zero);
  if (lhs.d2_hi_ < rhs.d2_lo_) return -1;
  if (rhs.d2_hi_ < lhs.d2_lo_) return 1;

  auto exact = [](const CelestialDistance& cd) -> Ratio {
    if (cd.region_ == Region::Endpoint) return {squared_norm(cd.anchor_, cd.query_), Expansion(1.0)};
    const Expansion vx = Expansion::difference(cd.other_.x, cd.anchor_.x);
    const Expansion vy = Expansion::difference(cd.other_.y, cd.anchor_.y);
    const Expansion wx = Expansion::difference(cd.query_.x, cd.anchor_.x);
    const Expansion wy = Expansion::difference(cd.query_.y, cd.anchor_.y);
    const Expansion cross = vx * wy - vy * wx;
    return {cross * cross, vx * vx + vy * vy};
  };
  return compare_ratios(exact(lhs), exact(rhs));
}

int compare(const CelestialDistance& lhs, const CelestialDistance& rhs) {
  using Region = CelestialDistance::Region;
  if (const int c = compare_squared_distance(lhs, rhs); c != 0) return c;
  if (lhs.region_ == Region::OnSegment) return 0;  // both zero, both angles zero

  // Equal nonzero distances: the wide angle grows with the squared cosine of
  // the narrow angle between the edge line and the closest-point segment,
  // (v.w)^2 / (|v|^2 |w|^2), and |w|^2 is the shared squared distance.
  auto cos2_key = [](const CelestialDistance& cd) -> Ratio {
    if (cd.region_ == Region::Interior) return {Expansion(), Expansion(1.0)};
    const Expansion vx = Expansion::difference(cd.other_.x, cd.anchor_.x);
    const Expansion vy = Expansion::difference(cd.other_.y, cd.anchor_.y);
    const Expansion wx = Expansion::difference(cd.query_.x, cd.anchor_.x);
    const Expansion wy = Expansion::difference(cd.query_.y, cd.anchor_.y);
    const Expansion dot = vx * wx + vy * wy;
    return {dot * dot, vx * vx + vy * vy};
  };
  return compare_ratios(cos2_key(lhs), cos2_key(rhs));
}

bool is_strictly_convex_ccw(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = polygon[i];
    const Point b = polygon[(i + 1) % n];
    if (a == b) return false;
    for (std::size_t k = 2; k < n; ++k) {
      if (orient(a, b, polygon[(i + k) % n]) != Orientation::Left) return false;
    }
  }
  return true;
}

std::vector<std::size_t> closest_edge_of_face(std::span<const std::pair<Point, Point>> perimeter,
                                              Point p, DistanceMetric metric) {
  require_finite(p);
  const std::size_t n = perimeter.size();
  std::vector<Point> polygon;
  polygon.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(perimeter[i].second == perimeter[(i + 1) % n].first)) {
      throw InvalidInputError("perimeter edges are not consecutive");
    }
    polygon.push_back(perimeter[i].first);
  }
  if (!is_strictly_convex_ccw(polygon)) {
    throw InvalidInputError("perimeter is not a strictly convex CCW polygon");
  }

  std::vector<CelestialDistance> dist;
  dist.reserve(n);
  for (const auto& [a, b] : perimeter) dist.push_back(celestial_distance(a, b, p));
  auto cmp = [metric](const CelestialDistance& x, const CelestialDistance& y) {
    return metric == DistanceMetric::Euclidean ? compare_squared_distance(x, y) : compare(x, y);
  };

  std::vector<std::size_t> best{0};
  for (std::size_t i = 1; i < n; ++i) {
    const int c = cmp(dist[i], dist[best.front()]);
    if (c < 0) {
      best.assign(1, i);
    } else if (c == 0) {
      best.push_back(i);
    }
  }
  return best;
}

}  // namespace celestial
