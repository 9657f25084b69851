#pragma once

// Exact sign predicates on double-precision points. Each predicate first
// evaluates in plain floating point under a forward error bound and falls
// back to exact expansion arithmetic when the bound cannot certify the sign.

#include "celestial/geometry.hpp"

namespace celestial {

/// Sign of (b - a) x (c - a).
Orientation orient(Point a, Point b, Point c);

/// p lies strictly on the right of the directed line a -> b.
bool strictly_right(Point a, Point b, Point p);

/// Interior corner at b of the walk a -> b -> c is strictly obtuse, i.e.
/// (b - a) . (c - b) > 0. A right angle is not obtuse.
bool obtuse(Point a, Point b, Point c);

/// Side test against the line through b orthogonal to the baseline a -> c.
/// True when p lies strictly on the left of that line oriented along the
/// right-hand normal of (c - a), i.e. (c - a) . (p - b) > 0. Only meaningful
/// for obtuse corners.
bool left_of_approx_bisector(Point a, Point b, Point c, Point p);

/// Sign of (u_to - u_from) . (v_to - v_from) in {-1, 0, 1}.
int dot_sign(Point u_from, Point u_to, Point v_from, Point v_to);

/// Positive when d lies strictly inside the circle through the CCW triangle
/// a, b, c; zero when cocircular; negative outside.
int incircle(Point a, Point b, Point c, Point d);

}  // namespace celestial
