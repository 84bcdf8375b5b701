#include "noneuclid/centers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "noneuclid/error.hpp"

namespace noneuclid {

namespace {

double twice_signed_area(const EuclideanPoint& a, const EuclideanPoint& b, const EuclideanPoint& c) {
  const Vec2 ab = b.v() - a.v();
  const Vec2 ac = c.v() - a.v();
  return ab.x() * ac.y() - ab.y() * ac.x();
}

// det(a, b, c) evaluated as a . ((b - a) x (c - a)), which is the same
// determinant with less cancellation for small triangles.
double triple_product(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a.dot((b - a).cross(c - a));
}

void require_nondegenerate(double measure) {
  if (!(std::abs(measure) > kCollinearityThreshold)) {
    throw GeometryError(ErrorKind::InvalidTriangle,
                        "vertices coincide or lie on one geodesic (measure " + std::to_string(measure) + ")");
  }
}

void validate(const EuclideanPoint& a, const EuclideanPoint& b, const EuclideanPoint& c) {
  require_nondegenerate(twice_signed_area(a, b, c));
}

void validate(const SphericalPoint& a, const SphericalPoint& b, const SphericalPoint& c) {
  require_nondegenerate(triple_product(a.v(), b.v(), c.v()));
}

void validate(const HyperbolicPoint& a, const HyperbolicPoint& b, const HyperbolicPoint& c) {
  require_nondegenerate(triple_product(a.v(), b.v(), c.v()));
}

// Sine of the inradius above which the spherical incenter is refined.
constexpr double kGnomonicRefineThreshold = 0.5;

// Point I on the sphere with <I, n_0> = <I, n_1> = <I, n_2>, for unit n_i in
// the open hemisphere around `chart`. With I ~ chart + y and the gnomonic
// images n_i ~ chart + x_i, the conditions read
//   1 + y.x_i = k s_i,  s_i = sqrt(1 + |x_i|^2),
// which is linear in (y, k). Differences of the rows give y = k z with
// M z = (s_0 - s_i) and M = rows (x_0 - x_i); then k = 1 / (s_0 - z.x_0).
SphericalPoint equiangular_point(const std::array<SphericalPole, 3>& poles, const Vec3& chart) {
  const Vec3 c = chart.normalized();
  const Vec3 helper = std::abs(c.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = c.cross(helper).normalized();
  const Vec3 e2 = c.cross(e1);
  std::array<Vec2, 3> x;
  std::array<double, 3> s2;
  for (int i = 0; i < 3; ++i) {
    const double h = poles[i].n.dot(c);
    x[i] = Vec2(poles[i].n.dot(e1), poles[i].n.dot(e2)) / h;
    s2[i] = x[i].squaredNorm();
  }
  auto s_diff = [&](int i) {  // sqrt(1 + s2[0]) - sqrt(1 + s2[i]) without cancellation
    return (s2[0] - s2[i]) / (std::sqrt(1.0 + s2[0]) + std::sqrt(1.0 + s2[i]));
  };
  Eigen::Matrix2d m;
  m.row(0) = (x[0] - x[1]).transpose();
  m.row(1) = (x[0] - x[2]).transpose();
  const Vec2 z = m.fullPivLu().solve(Vec2(s_diff(1), s_diff(2)));
  const double k = 1.0 / (std::sqrt(1.0 + s2[0]) - z.dot(x[0]));
  return SphericalPoint::from_direction(c + k * (z.x() * e1 + z.y() * e2));
}

}  // namespace

template <class Point>
Triangle<Point>::Triangle(const Point& a, const Point& b, const Point& c) : v_{a, b, c} {
  validate(a, b, c);
}

template class Triangle<EuclideanPoint>;
template class Triangle<SphericalPoint>;
template class Triangle<HyperbolicPoint>;

template <class Point>
auto oriented_sides_impl(const Triangle<Point>& t) {
  const auto& v = t.vertices();
  return std::array{side_pole(v[1], v[2], v[0]), side_pole(v[2], v[0], v[1]),
                    side_pole(v[0], v[1], v[2])};
}

std::array<EuclideanLine, 3> oriented_sides(const EuclideanTriangle& t) { return oriented_sides_impl(t); }
std::array<SphericalPole, 3> oriented_sides(const SphericalTriangle& t) { return oriented_sides_impl(t); }
std::array<HyperbolicPole, 3> oriented_sides(const HyperbolicTriangle& t) { return oriented_sides_impl(t); }

Circle<EuclideanPoint> circumcenter(const EuclideanTriangle& t) {
  const Vec2 b = t.b().v() - t.a().v();
  const Vec2 c = t.c().v() - t.a().v();
  const double denom = 2.0 * (b.x() * c.y() - b.y() * c.x());
  const Vec2 u((c.y() * b.squaredNorm() - b.y() * c.squaredNorm()) / denom,
               (b.x() * c.squaredNorm() - c.x() * b.squaredNorm()) / denom);
  const EuclideanPoint center(t.a().v() + u);
  return {center, distance(center, t.a())};
}

Circle<SphericalPoint> circumcenter(const SphericalTriangle& t) {
  const Vec3& a = t.a().v();
  const Vec3 m = (t.b().v() - a).cross(t.c().v() - a);
  // Of the two antipodal candidates keep the one on the vertices' side, so
  // that R <= pi/2.
  const Vec3 centroid = a + t.b().v() + t.c().v();
  const auto center = SphericalPoint::from_direction(m.dot(centroid) < 0.0 ? Vec3(-m) : m);
  return {center, distance(center, t.a())};
}

Circle<HyperbolicPoint> circumcenter(const HyperbolicTriangle& t) {
  const Vec3& a = t.a().v();
  const Vec3 m = minkowski_cross(t.b().v() - a, t.c().v() - a);
  if (!(minkowski_dot(m, m) < 0.0)) {
    throw GeometryError(ErrorKind::IdealCircumcenter,
                        "vertices lie on a horocycle or hypercycle; no circumscribed circle exists");
  }
  const auto center = HyperbolicPoint::from_timelike(m);
  return {center, distance(center, t.a())};
}

Circle<EuclideanPoint> incenter(const EuclideanTriangle& t) {
  const auto& v = t.vertices();
  const double la = distance(v[1], v[2]);
  const double lb = distance(v[2], v[0]);
  const double lc = distance(v[0], v[1]);
  const double perimeter = la + lb + lc;
  const EuclideanPoint center((la * v[0].v() + lb * v[1].v() + lc * v[2].v()) / perimeter);
  return {center, point_to_geodesic(center, side_pole(v[1], v[2], v[0]))};
}

// The incenter I is the point with <I, n_a> = <I, n_b> = <I, n_c>. Writing
// n_a = (b x c) / |b x c| (and cyclically) that system is solved by
// I ~ |b x c| a + |c x a| b + |a x b| c, since <a, b x c> = det(a, b, c) is
// common to all three sides. |b x c| is sin(side a) on the sphere and
// sinh(side a) on the hyperboloid.
Circle<SphericalPoint> incenter(const SphericalTriangle& t) {
  const auto& v = t.vertices();
  Vec3 sum = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    const Vec3& p = v[(i + 1) % 3].v();
    const Vec3& q = v[(i + 2) % 3].v();
    sum += p.cross(q - p).norm() * v[i].v();
  }
  auto center = SphericalPoint::from_direction(sum);
  const auto sides = oriented_sides(t);
  // Near r = pi/2 the weighted sum cancels almost completely. Re-solve
  // <I, n_i> = const for the oriented poles in the gnomonic chart at the
  // first estimate; the chart equations only involve pole differences of
  // the size of the pole triangle and stay well conditioned there.
  if (center.v().dot(sides[0].n) > kGnomonicRefineThreshold) {
    center = equiangular_point(sides, center.v());
  }
  return {center, point_to_geodesic(center, sides[0])};
}

Circle<HyperbolicPoint> incenter(const HyperbolicTriangle& t) {
  const auto& v = t.vertices();
  Vec3 sum = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    const Vec3& p = v[(i + 1) % 3].v();
    const Vec3& q = v[(i + 2) % 3].v();
    const Vec3 m = minkowski_cross(p, q - p);
    sum += std::sqrt(std::max(minkowski_dot(m, m), 0.0)) * v[i].v();
  }
  const auto center = HyperbolicPoint::from_timelike(sum);
  return {center, point_to_geodesic(center, side_pole(v[1], v[2], v[0]))};
}

}  // namespace noneuclid
