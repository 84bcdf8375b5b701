#include "noneuclid/geom_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noneuclid/error.hpp"

namespace noneuclid {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::InvalidTriangle: return "InvalidTriangle";
    case ErrorKind::DegenerateSide: return "DegenerateSide";
    case ErrorKind::IdealCircumcenter: return "IdealCircumcenter";
    case ErrorKind::UnrealizablePair: return "UnrealizablePair";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

std::string_view to_string(Geometry geometry) noexcept {
  switch (geometry) {
    case Geometry::euclidean: return "euclidean";
    case Geometry::spherical: return "spherical";
    case Geometry::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

std::optional<Geometry> parse_geometry(std::string_view name) noexcept {
  if (name == "euclidean") return Geometry::euclidean;
  if (name == "spherical") return Geometry::spherical;
  if (name == "hyperbolic") return Geometry::hyperbolic;
  return std::nullopt;
}

double minkowski_dot(const Vec3& x, const Vec3& y) noexcept {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

Vec3 minkowski_cross(const Vec3& x, const Vec3& y) noexcept {
  Vec3 c = x.cross(y);
  c[0] = -c[0];
  return c;
}

namespace {

bool all_finite(const auto& v) {
  return v.allFinite();
}

std::string describe(const Vec3& v) {
  return "(" + std::to_string(v[0]) + ", " + std::to_string(v[1]) + ", " + std::to_string(v[2]) + ")";
}

}  // namespace

EuclideanPoint::EuclideanPoint(double x, double y) : v_(x, y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw GeometryError(ErrorKind::InvalidPoint, "euclidean coordinates must be finite");
  }
}

SphericalPoint::SphericalPoint(const Vec3& v) {
  const double norm = v.norm();
  if (!all_finite(v) || std::abs(norm - 1.0) > kNormalizationTolerance) {
    throw GeometryError(ErrorKind::InvalidPoint, "not a unit vector: " + describe(v));
  }
  v_ = v / norm;
}

SphericalPoint SphericalPoint::from_direction(const Vec3& direction) {
  const double norm = direction.norm();
  if (!all_finite(direction) || !(norm > 0.0) || !std::isfinite(norm)) {
    throw GeometryError(ErrorKind::InvalidPoint, "cannot project onto the sphere: " + describe(direction));
  }
  return SphericalPoint(direction / norm, Unchecked{});
}

HyperbolicPoint::HyperbolicPoint(const Vec3& v) {
  const double q = minkowski_dot(v, v);
  if (!all_finite(v) || std::abs(q + 1.0) > kNormalizationTolerance || !(v[0] > 0.0)) {
    throw GeometryError(ErrorKind::InvalidPoint, "not on the upper hyperboloid sheet: " + describe(v));
  }
  v_ = v / std::sqrt(-q);
}

HyperbolicPoint HyperbolicPoint::from_timelike(const Vec3& direction) {
  const double q = minkowski_dot(direction, direction);
  if (!all_finite(direction) || !(q < 0.0) || !std::isfinite(q)) {
    throw GeometryError(ErrorKind::InvalidPoint, "not a timelike vector: " + describe(direction));
  }
  Vec3 v = direction / std::sqrt(-q);
  if (v[0] < 0.0) v = -v;
  return HyperbolicPoint(v, Unchecked{});
}

double distance(const EuclideanPoint& p, const EuclideanPoint& q) noexcept {
  return (p.v() - q.v()).norm();
}

// atan2 form: equal to arccos(clamp(p.q)) but keeps full relative accuracy
// for nearly coincident and nearly antipodal points.
double distance(const SphericalPoint& p, const SphericalPoint& q) noexcept {
  return std::atan2(p.v().cross(q.v()).norm(), p.v().dot(q.v()));
}

double distance(const HyperbolicPoint& p, const HyperbolicPoint& q) noexcept {
  const double cosh_d = std::max(-minkowski_dot(p.v(), q.v()), 1.0);
  if (cosh_d > 2.0) return std::acosh(cosh_d);
  // <p-q, p-q> = 4 sinh^2(d/2); accurate for short distances.
  const Vec3 diff = p.v() - q.v();
  const double chord2 = std::max(minkowski_dot(diff, diff), 0.0);
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

namespace {

template <class Pole>
Pole orient(Pole pole, double hint_side) {
  if (hint_side == 0.0 || !std::isfinite(hint_side)) {
    throw GeometryError(ErrorKind::DegenerateSide, "interior hint lies on the side");
  }
  if (hint_side < 0.0) pole.n = -pole.n;
  return pole;
}

}  // namespace

EuclideanLine side_pole(const EuclideanPoint& a, const EuclideanPoint& b,
                        const EuclideanPoint& interior_hint) {
  const Vec2 dir = b.v() - a.v();
  const double len = dir.norm();
  if (len < kAntipodalThreshold) {
    throw GeometryError(ErrorKind::DegenerateSide, "coincident side endpoints");
  }
  EuclideanLine line{Vec2(-dir.y(), dir.x()) / len, 0.0};
  line.offset = line.normal.dot(a.v());
  const double side = line.normal.dot(interior_hint.v()) - line.offset;
  if (side == 0.0 || !std::isfinite(side)) {
    throw GeometryError(ErrorKind::DegenerateSide, "interior hint lies on the side");
  }
  if (side < 0.0) {
    line.normal = -line.normal;
    line.offset = -line.offset;
  }
  return line;
}

SphericalPole side_pole(const SphericalPoint& a, const SphericalPoint& b,
                        const SphericalPoint& interior_hint) {
  // a x (b - a) == a x b, with less cancellation for close points.
  const Vec3 m = a.v().cross(b.v() - a.v());
  const double len = m.norm();
  if (len < kAntipodalThreshold) {
    throw GeometryError(ErrorKind::DegenerateSide, "coincident or antipodal side endpoints");
  }
  SphericalPole pole{m / len};
  return orient(pole, pole.n.dot(interior_hint.v()));
}

HyperbolicPole side_pole(const HyperbolicPoint& a, const HyperbolicPoint& b,
                         const HyperbolicPoint& interior_hint) {
  const Vec3 m = minkowski_cross(a.v(), b.v() - a.v());
  const double q = minkowski_dot(m, m);
  if (!(q > kAntipodalThreshold * kAntipodalThreshold)) {
    throw GeometryError(ErrorKind::DegenerateSide, "coincident side endpoints");
  }
  HyperbolicPole pole{m / std::sqrt(q)};
  return orient(pole, minkowski_dot(interior_hint.v(), pole.n));
}

double point_to_geodesic(const EuclideanPoint& p, const EuclideanLine& line) noexcept {
  return line.normal.dot(p.v()) - line.offset;
}

// atan2(sin, cos) of the elevation above the great circle; same value as
// arcsin(clamp(p.n)) but well conditioned near the pole.
double point_to_geodesic(const SphericalPoint& p, const SphericalPole& pole) noexcept {
  return std::atan2(p.v().dot(pole.n), p.v().cross(pole.n).norm());
}

double point_to_geodesic(const HyperbolicPoint& p, const HyperbolicPole& pole) noexcept {
  return std::asinh(minkowski_dot(p.v(), pole.n));
}

}  // namespace noneuclid
