#include "celestial/predicates.hpp"

#include <cmath>
#include <limits>

#include "expansion.hpp"

namespace celestial {
namespace {

using detail::Expansion;

constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
// Shewchuk's static bounds for the first-stage floating-point filter.
constexpr double kTwoProductErrBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kInCircleErrBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// sign((a1 - b1) * (c1 - d1) + (a2 - b2) * (c2 - d2))
int sign_two_products(double a1, double b1, double c1, double d1, double a2, double b2, double c2,
                      double d2) {
  const double left = (a1 - b1) * (c1 - d1);
  const double right = (a2 - b2) * (c2 - d2);
  const double det = left + right;
  const double bound = kTwoProductErrBound * (std::fabs(left) + std::fabs(right));
  if (det > bound || -det > bound) return sign_of(det);

  const Expansion exact = Expansion::difference(a1, b1) * Expansion::difference(c1, d1) +
                          Expansion::difference(a2, b2) * Expansion::difference(c2, d2);
  return exact.sign();
}

void require_distinct(Point a, Point b) {
  if (a == b) throw DegenerateEdgeError("zero-length edge");
}

}  // namespace

Orientation orient(Point a, Point b, Point c) {
  require_finite(a);
  require_finite(b);
  require_finite(c);
  // (bx - ax)(cy - ay) + (ay - by)(cx - ax)
  const int s = sign_two_products(b.x, a.x, c.y, a.y, a.y, b.y, c.x, a.x);
  return static_cast<Orientation>(s);
}

bool strictly_right(Point a, Point b, Point p) {
  require_distinct(a, b);
  return orient(a, b, p) == Orientation::Right;
}

int dot_sign(Point u_from, Point u_to, Point v_from, Point v_to) {
  require_finite(u_from);
  require_finite(u_to);
  require_finite(v_from);
  require_finite(v_to);
  return sign_two_products(u_to.x, u_from.x, v_to.x, v_from.x, u_to.y, u_from.y, v_to.y,
                           v_from.y);
}

bool obtuse(Point a, Point b, Point c) {
  require_distinct(a, b);
  require_distinct(b, c);
  return dot_sign(a, b, b, c) > 0;
}

bool left_of_approx_bisector(Point a, Point b, Point c, Point p) {
  if (a == c) throw DegenerateEdgeError("approximate bisector baseline has zero length");
  return dot_sign(a, c, b, p) > 0;
}

int incircle(Point a, Point b, Point c, Point d) {
  require_finite(a);
  require_finite(b);
  require_finite(c);
  require_finite(d);
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det =
      alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                           (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                           (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  const double bound = kInCircleErrBound * permanent;
  if (det > bound || -det > bound) return sign_of(det);

  const Expansion eadx = Expansion::difference(a.x, d.x), eady = Expansion::difference(a.y, d.y);
  const Expansion ebdx = Expansion::difference(b.x, d.x), ebdy = Expansion::difference(b.y, d.y);
  const Expansion ecdx = Expansion::difference(c.x, d.x), ecdy = Expansion::difference(c.y, d.y);
  const Expansion ealift = eadx * eadx + eady * eady;
  const Expansion eblift = ebdx * ebdx + ebdy * ebdy;
  const Expansion eclift = ecdx * ecdx + ecdy * ecdy;
  const Expansion exact = ealift * (ebdx * ecdy - ecdx * ebdy) +
                          eblift * (ecdx * eady - eadx * ecdy) +
                          eclift * (eadx * ebdy - ebdx * eady);
  return exact.sign();
}

}  // namespace celestial
