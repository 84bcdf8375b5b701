#include "noneuclid/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "noneuclid/error.hpp"

namespace noneuclid {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sq(double x) { return x * x; }

bool right_angle(double R) { return std::abs(R - kHalfPi) <= kRightAngleTolerance; }

bool near_right_angle(double R) { return R > kHalfPi - kCotStabilizedBand; }

// Slack within a few ulps of the terms it is formed from is roundoff on an
// equality case; its square root would otherwise surface as ~1e-8 noise.
constexpr double kSlackSnap = 8.0 * std::numeric_limits<double>::epsilon();

// Rejects clearly negative slack and snaps roundoff-level slack to 0.
double realizable_slack(double slack, double scale, const char* what) {
  const double magnitude = std::max(1.0, std::abs(scale));
  if (!std::isfinite(slack) || slack < -kEqualityRoundoff * magnitude) {
    throw GeometryError(ErrorKind::UnrealizablePair, what);
  }
  return slack <= kSlackSnap * magnitude ? 0.0 : slack;
}

}  // namespace

Residual make_residual(double lhs, double rhs) noexcept {
  const double raw = lhs - rhs;
  return {raw, raw / std::max({1.0, std::abs(lhs), std::abs(rhs)})};
}

double chapple_euclidean(double R, double r) {
  const double slack = realizable_slack(R - 2.0 * r, R, "R < 2r has no euclidean triangle");
  return std::sqrt(R * slack);
}

Residual residual_cn_spherical(double R, double r, double d) noexcept {
  return make_residual(sq(std::sin(d)), sq(std::sin(R - r)) - sq(std::sin(r)) * sq(std::cos(R)));
}

Residual residual_cn_hyperbolic(double R, double r, double d) noexcept {
  return make_residual(sq(std::sinh(d)), sq(std::sinh(R - r)) - sq(std::sinh(r)) * sq(std::cosh(R)));
}

Residual residual_alabdullatif(double R, double r, double d) {
  const double cosh2_R = sq(std::cosh(R));
  const double cosh2_rd = sq(std::cosh(r + d));
  const double denominator = cosh2_rd - cosh2_R * sq(std::cosh(r));
  if (!(std::abs(denominator) >= kSingularDenominator)) {
    throw GeometryError(ErrorKind::SingularDenominator,
                        "cosh^2(r+d) - cosh^2 R cosh^2 r = " + std::to_string(denominator));
  }
  const double numerator = cosh2_R * (sq(std::sinh(r)) - 1.0) + cosh2_rd;
  return make_residual(std::tanh(r), std::tanh(R + d) * numerator / denominator);
}

double predict_d_spherical(double R, double r) {
  if (!(r > 0.0 && r < R && R <= kHalfPi + kRightAngleTolerance)) {
    throw GeometryError(ErrorKind::UnrealizablePair, "spherical pair needs 0 < r < R <= pi/2");
  }
  if (right_angle(R)) return 0.0;
  if (near_right_angle(R)) {
    // Numerator and denominator multiplied by cos^2 R cos^2 r.
    const double sR = std::sin(R), cR = std::cos(R), sr = std::sin(r), cr = std::cos(r);
    const double slack = realizable_slack(std::sin(R - r) - sr * cR, 1.0, "tan R < 2 tan r");
    return std::sqrt(sR * cr * slack) / std::sqrt(sq(sr * cR) + sq(std::cos(R - r)));
  }
  const double tR = std::tan(R), tr = std::tan(r);
  const double slack = realizable_slack(tR - 2.0 * tr, tR, "tan R < 2 tan r");
  return std::sqrt(tR * slack) / std::sqrt(sq(tr) + sq(1.0 + tr * tR));
}

double predict_d_hyperbolic(double R, double r) {
  if (!(r > 0.0 && r < R)) {
    throw GeometryError(ErrorKind::UnrealizablePair, "hyperbolic pair needs 0 < r < R");
  }
  const double tR = std::tanh(R), tr = std::tanh(r);
  const double slack = realizable_slack(tR - 2.0 * tr, tR, "tanh R < 2 tanh r");
  const double disc = discriminant_hyperbolic(R, r);
  if (!(disc > 0.0)) {
    throw GeometryError(ErrorKind::NegativeDiscriminant,
                        "-tanh^2 r + (1 - tanh r tanh R)^2 = " + std::to_string(disc));
  }
  return std::sqrt(tR * slack) / std::sqrt(disc);
}

Residual residual_tan_squared(double R, double r, double d) noexcept {
  const double t2d = sq(std::tan(d));
  if (near_right_angle(R)) {
    const double sR = std::sin(R), cR = std::cos(R), sr = std::sin(r), cr = std::cos(r);
    return make_residual(t2d * (sq(sr * cR) + sq(std::cos(R - r))),
                         sR * cr * (std::sin(R - r) - sr * cR));
  }
  const double tR = std::tan(R), tr = std::tan(r);
  return make_residual(t2d * (sq(tr) + sq(1.0 + tr * tR)), tR * (tR - 2.0 * tr));
}

Residual residual_tanh_squared(double R, double r, double d) noexcept {
  const double tR = std::tanh(R), tr = std::tanh(r);
  return make_residual(sq(std::tanh(d)) * (-sq(tr) + sq(1.0 - tr * tR)), tR * (tR - 2.0 * tr));
}

double discriminant_hyperbolic(double R, double r) noexcept {
  const double tr = std::tanh(r);
  return -sq(tr) + sq(1.0 - tr * std::tanh(R));
}

Slack inequality_slack(Geometry geometry, double R, double r) noexcept {
  switch (geometry) {
    case Geometry::euclidean:
      return {R - 2.0 * r, false};
    case Geometry::spherical:
      if (right_angle(R)) return {std::numeric_limits<double>::infinity(), true};
      return {std::tan(R) - 2.0 * std::tan(r), false};
    case Geometry::hyperbolic:
      return {std::tanh(R) - 2.0 * std::tanh(r), false};
  }
  return {kNaN, false};
}

IdentityReport evaluate(const CenterReport<EuclideanPoint>& report) {
  const double R = report.circumradius, r = report.inradius, d = report.center_distance;
  IdentityReport out;
  out.geometry = Geometry::euclidean;
  try {
    out.predicted = chapple_euclidean(R, r);
    out.chapple_euler = make_residual(d, out.predicted);
    out.prediction_error = std::abs(out.predicted - d);
  } catch (const GeometryError&) {
    out.predicted = kNaN;
    out.chapple_euler = Residual{kNaN, kNaN};
    out.prediction_error = kNaN;
  }
  out.slack = inequality_slack(Geometry::euclidean, R, r);
  return out;
}

IdentityReport evaluate(const CenterReport<SphericalPoint>& report) {
  const double R = report.circumradius, r = report.inradius, d = report.center_distance;
  IdentityReport out;
  out.geometry = Geometry::spherical;
  out.center_distance = residual_cn_spherical(R, r, d);
  try {
    out.predicted = predict_d_spherical(R, r);
    // d may sit near pi on the great-circle branch; |tan d| folds it to 0.
    out.prediction_error = std::abs(out.predicted - std::abs(std::tan(d)));
  } catch (const GeometryError&) {
    out.predicted = kNaN;
    out.prediction_error = kNaN;
  }
  out.squared_tangent = residual_tan_squared(R, r, d);
  out.slack = inequality_slack(Geometry::spherical, R, r);
  return out;
}

IdentityReport evaluate(const CenterReport<HyperbolicPoint>& report) {
  const double R = report.circumradius, r = report.inradius, d = report.center_distance;
  IdentityReport out;
  out.geometry = Geometry::hyperbolic;
  out.center_distance = residual_cn_hyperbolic(R, r, d);
  try {
    out.tanh_inradius = residual_alabdullatif(R, r, d);
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::SingularDenominator) throw;
    out.tanh_inradius_singular = true;
  }
  try {
    out.predicted = predict_d_hyperbolic(R, r);
    out.prediction_error = std::abs(out.predicted - std::tanh(d));
  } catch (const GeometryError&) {
    out.predicted = kNaN;
    out.prediction_error = kNaN;
  }
  out.squared_tangent = residual_tanh_squared(R, r, d);
  out.slack = inequality_slack(Geometry::hyperbolic, R, r);
  out.discriminant = discriminant_hyperbolic(R, r);
  return out;
}

}  // namespace noneuclid
