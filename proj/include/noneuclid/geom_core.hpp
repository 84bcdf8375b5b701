#pragma once

// Points, distances and oriented side lines for the three constant-curvature
// models used throughout the library:
//
//   K = 0   the plane R^2
//   K = +1  the unit sphere S^2 in R^3
//   K = -1  the upper sheet of the hyperboloid <v,v> = -1 in Minkowski
//           space with form <x,y> = -x0*y0 + x1*y1 + x2*y2
//
// Each geometry has its own point type, so mixing geometries in one call is a
// compile error rather than a runtime check.

#include <optional>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace noneuclid {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

enum class Geometry { euclidean, spherical, hyperbolic };

std::string_view to_string(Geometry geometry) noexcept;
std::optional<Geometry> parse_geometry(std::string_view name) noexcept;

/// Band inside which constructors silently re-normalize their input.
inline constexpr double kNormalizationTolerance = 1e-9;
/// |a x b| (or its Minkowski analogue) below this makes a side degenerate.
inline constexpr double kAntipodalThreshold = 1e-12;

double minkowski_dot(const Vec3& x, const Vec3& y) noexcept;

/// J (x cross y) with J = diag(-1, 1, 1). The result is Minkowski-orthogonal
/// to both arguments.
Vec3 minkowski_cross(const Vec3& x, const Vec3& y) noexcept;

class EuclideanPoint {
 public:
  static constexpr Geometry geometry = Geometry::euclidean;

  EuclideanPoint(double x, double y);
  explicit EuclideanPoint(const Vec2& v) : EuclideanPoint(v.x(), v.y()) {}

  const Vec2& v() const noexcept { return v_; }
  double x() const noexcept { return v_.x(); }
  double y() const noexcept { return v_.y(); }

 private:
  Vec2 v_;
};

class SphericalPoint {
 public:
  static constexpr Geometry geometry = Geometry::spherical;

  /// Accepts vectors with | |v| - 1 | <= kNormalizationTolerance and
  /// re-normalizes them; anything else throws InvalidPoint.
  explicit SphericalPoint(const Vec3& v);

  /// Projects any finite nonzero vector onto the sphere.
  static SphericalPoint from_direction(const Vec3& direction);

  const Vec3& v() const noexcept { return v_; }

 private:
  struct Unchecked {};
  SphericalPoint(const Vec3& v, Unchecked) : v_(v) {}

  Vec3 v_;
};

class HyperbolicPoint {
 public:
  static constexpr Geometry geometry = Geometry::hyperbolic;

  /// Accepts vectors with | <v,v> + 1 | <= kNormalizationTolerance and
  /// v0 > 0, re-normalizing onto the upper sheet.
  explicit HyperbolicPoint(const Vec3& v);

  /// Scales a future- or past-pointing timelike vector onto the upper sheet.
  static HyperbolicPoint from_timelike(const Vec3& direction);

  const Vec3& v() const noexcept { return v_; }

 private:
  struct Unchecked {};
  HyperbolicPoint(const Vec3& v, Unchecked) : v_(v) {}

  Vec3 v_;
};

/// Oriented Euclidean line {p : normal . p = offset}; the positive side is
/// where normal . p > offset.
struct EuclideanLine {
  Vec2 normal;
  double offset = 0.0;
};

/// Unit normal of an oriented great circle.
struct SphericalPole {
  Vec3 n;
};

/// Spacelike unit normal (<n,n> = +1) of an oriented hyperbolic geodesic.
struct HyperbolicPole {
  Vec3 n;
};

double distance(const EuclideanPoint& p, const EuclideanPoint& q) noexcept;
double distance(const SphericalPoint& p, const SphericalPoint& q) noexcept;
double distance(const HyperbolicPoint& p, const HyperbolicPoint& q) noexcept;

// Side through a and b, oriented so interior_hint lies on the positive side.
// Throws DegenerateSide when a and b coincide (or are antipodal on the
// sphere) or when the hint lies on the side itself.
EuclideanLine side_pole(const EuclideanPoint& a, const EuclideanPoint& b,
                        const EuclideanPoint& interior_hint);
SphericalPole side_pole(const SphericalPoint& a, const SphericalPoint& b,
                        const SphericalPoint& interior_hint);
HyperbolicPole side_pole(const HyperbolicPoint& a, const HyperbolicPoint& b,
                         const HyperbolicPoint& interior_hint);

// Signed distance from p to the side, positive on the oriented interior.
double point_to_geodesic(const EuclideanPoint& p, const EuclideanLine& line) noexcept;
double point_to_geodesic(const SphericalPoint& p, const SphericalPole& pole) noexcept;
double point_to_geodesic(const HyperbolicPoint& p, const HyperbolicPole& pole) noexcept;

}  // namespace noneuclid
