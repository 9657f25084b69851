#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace celestial {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite coordinates or otherwise malformed arguments.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Zero-length edge or segment handed to a predicate.
class DegenerateEdgeError : public Error {
 public:
  using Error::Error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
};

constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline void require_finite(Point p) {
  if (!is_finite(p)) {
    throw InvalidInputError("non-finite coordinate");
  }
}

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::Left:
      return "Left";
    case Orientation::Right:
      return "Right";
    case Orientation::Collinear:
      return "Collinear";
  }
  return "?";
}

}  // namespace celestial
