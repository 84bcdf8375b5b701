#pragma once

// Circumscribed and inscribed circles of a triangle in each geometry, and the
// distance d between their centers.

#include <array>

#include "noneuclid/geom_core.hpp"

namespace noneuclid {

/// |det(a,b,c)| (sphere, hyperboloid) or twice the signed area (plane) must
/// exceed this for a triangle to be accepted.
inline constexpr double kCollinearityThreshold = 1e-12;
/// Spherical circumradii within this of pi/2 count as the great-circle case.
inline constexpr double kRightAngleTolerance = 1e-9;

template <class Point>
class Triangle {
 public:
  using point_type = Point;
  static constexpr Geometry geometry = Point::geometry;

  /// Throws InvalidTriangle for coincident or collinear vertices.
  Triangle(const Point& a, const Point& b, const Point& c);

  const Point& a() const noexcept { return v_[0]; }
  const Point& b() const noexcept { return v_[1]; }
  const Point& c() const noexcept { return v_[2]; }
  const std::array<Point, 3>& vertices() const noexcept { return v_; }

 private:
  std::array<Point, 3> v_;
};

using EuclideanTriangle = Triangle<EuclideanPoint>;
using SphericalTriangle = Triangle<SphericalPoint>;
using HyperbolicTriangle = Triangle<HyperbolicPoint>;

template <class Point>
struct Circle {
  Point center;
  double radius;
};

template <class Point>
struct CenterReport {
  Point circumcenter;
  Point incenter;
  double circumradius;  // R
  double inradius;      // r
  double center_distance;  // d
};

/// Spherical results always satisfy R <= pi/2. Hyperbolic triangles whose
/// vertices lie on a horocycle or hypercycle throw IdealCircumcenter.
Circle<EuclideanPoint> circumcenter(const EuclideanTriangle& t);
Circle<SphericalPoint> circumcenter(const SphericalTriangle& t);
Circle<HyperbolicPoint> circumcenter(const HyperbolicTriangle& t);

Circle<EuclideanPoint> incenter(const EuclideanTriangle& t);
Circle<SphericalPoint> incenter(const SphericalTriangle& t);
Circle<HyperbolicPoint> incenter(const HyperbolicTriangle& t);

template <class Point>
CenterReport<Point> analyze(const Triangle<Point>& t) {
  const auto outer = circumcenter(t);
  const auto inner = incenter(t);
  return CenterReport<Point>{outer.center, inner.center, outer.radius, inner.radius,
                             distance(outer.center, inner.center)};
}

/// Sides oriented toward the opposite vertex: entry i is the side opposite
/// vertex i.
std::array<EuclideanLine, 3> oriented_sides(const EuclideanTriangle& t);
std::array<SphericalPole, 3> oriented_sides(const SphericalTriangle& t);
std::array<HyperbolicPole, 3> oriented_sides(const HyperbolicTriangle& t);

}  // namespace noneuclid
