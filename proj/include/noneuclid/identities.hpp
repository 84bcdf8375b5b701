#pragma once

// Chapple-Euler type relations between the circumradius R, the inradius r
// and the center distance d, evaluated as predictors or as residuals
// (left side minus right side) that vanish on genuine triangles.

#include <optional>

#include "noneuclid/centers.hpp"

namespace noneuclid {

/// Above pi/2 - kCotStabilizedBand the spherical tan-forms are evaluated
/// after multiplying through by cos^2 R cos^2 r.
inline constexpr double kCotStabilizedBand = 1e-4;
/// |cosh^2(r+d) - cosh^2 R cosh^2 r| below this is reported as singular.
inline constexpr double kSingularDenominator = 1e-12;
/// Relative slack below which tan R < 2 tan r is still treated as equality.
inline constexpr double kEqualityRoundoff = 1e-12;

/// raw = lhs - rhs; normalized = raw / max(1, |lhs|, |rhs|).
struct Residual {
  double raw = 0.0;
  double normalized = 0.0;
};

Residual make_residual(double lhs, double rhs) noexcept;

/// d = sqrt(R (R - 2r)). Throws UnrealizablePair when R < 2r.
double chapple_euclidean(double R, double r);

/// sin^2 d - (sin^2(R - r) - sin^2 r cos^2 R)
Residual residual_cn_spherical(double R, double r, double d) noexcept;
/// sinh^2 d - (sinh^2(R - r) - sinh^2 r cosh^2 R)
Residual residual_cn_hyperbolic(double R, double r, double d) noexcept;

/// tanh r - tanh(R+d) (cosh^2 R (sinh^2 r - 1) + cosh^2(r+d)) / (cosh^2(r+d) - cosh^2 R cosh^2 r).
/// Throws SingularDenominator when the denominator is within
/// kSingularDenominator of zero.
Residual residual_alabdullatif(double R, double r, double d);

/// Predicted tan d for a spherical triangle; 0 on the R = pi/2 branch.
/// Throws UnrealizablePair when tan R < 2 tan r.
double predict_d_spherical(double R, double r);

/// Predicted tanh d for a hyperbolic triangle. Throws UnrealizablePair when
/// tanh R < 2 tanh r and NegativeDiscriminant when the denominator's
/// radicand is not positive.
double predict_d_hyperbolic(double R, double r);

/// tan^2 d (tan^2 r + (1 + tan r tan R)^2) - tan R (tan R - 2 tan r),
/// multiplied through by cos^2 R cos^2 r near R = pi/2.
Residual residual_tan_squared(double R, double r, double d) noexcept;
/// tanh^2 d (-tanh^2 r + (1 - tanh r tanh R)^2) - tanh R (tanh R - 2 tanh r)
Residual residual_tanh_squared(double R, double r, double d) noexcept;

/// -tanh^2 r + (1 - tanh r tanh R)^2
double discriminant_hyperbolic(double R, double r) noexcept;

struct Slack {
  double value = 0.0;
  /// Spherical R = pi/2: tan R is unbounded and value is +infinity.
  bool right_angle = false;
};

/// R - 2r, tan R - 2 tan r or tanh R - 2 tanh r.
Slack inequality_slack(Geometry geometry, double R, double r) noexcept;

struct IdentityReport {
  Geometry geometry = Geometry::euclidean;
  std::optional<Residual> chapple_euler;  // euclidean: d - sqrt(R(R-2r))
  std::optional<Residual> center_distance;  // sin^2 d (sinh^2 d) identity
  std::optional<Residual> tanh_inradius;  // hyperbolic; empty when singular
  bool tanh_inradius_singular = false;
  /// tan d (spherical), tanh d (hyperbolic) or d (euclidean) as predicted
  /// from (R, r) alone.
  double predicted = 0.0;
  /// |predicted - T(d)| with T the matching transform of the constructed d.
  double prediction_error = 0.0;
  std::optional<Residual> squared_tangent;  // tan^2 d or tanh^2 d form
  Slack slack;
  std::optional<double> discriminant;  // hyperbolic
};

IdentityReport evaluate(const CenterReport<EuclideanPoint>& report);
IdentityReport evaluate(const CenterReport<SphericalPoint>& report);
IdentityReport evaluate(const CenterReport<HyperbolicPoint>& report);

}  // namespace noneuclid
