#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "noneuclid/centers.hpp"
#include "noneuclid/error.hpp"
#include "noneuclid/identities.hpp"
#include "noneuclid/sampler.hpp"
#include "support/oracles.hpp"

using namespace noneuclid;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  return ErrorKind::InvalidConfig;
}

SphericalTriangle polar_triangle(double theta, double az0, double az1, double az2) {
  auto at = [theta](double az) {
    return SphericalPoint(Vec3(std::sin(theta) * std::cos(az), std::sin(theta) * std::sin(az), std::cos(theta)));
  };
  return SphericalTriangle(at(az0), at(az1), at(az2));
}

HyperbolicTriangle hyperbolic_equilateral(double rho) {
  auto at = [rho](double az) {
    return HyperbolicPoint(Vec3(std::cosh(rho), std::sinh(rho) * std::cos(az), std::sinh(rho) * std::sin(az)));
  };
  return HyperbolicTriangle(at(0.0), at(2.0 * kPi / 3.0), at(4.0 * kPi / 3.0));
}

// d solving the sin^2 / sinh^2 center-distance identity for given (R, r).
// cos^2 d is formed as cos^2(R-r) + sin^2 r cos^2 R to avoid 1 - sin^2 d.
double spherical_d_from_identity(double R, double r) {
  const double s2 = std::pow(std::sin(R - r), 2) - std::pow(std::sin(r) * std::cos(R), 2);
  const double c2 = std::pow(std::cos(R - r), 2) + std::pow(std::sin(r) * std::cos(R), 2);
  return std::atan2(std::sqrt(std::max(0.0, s2)), std::sqrt(c2));
}

double hyperbolic_d_from_identity(double R, double r) {
  const double s2 = std::pow(std::sinh(R - r), 2) - std::pow(std::sinh(r) * std::cosh(R), 2);
  return std::asinh(std::sqrt(std::max(0.0, s2)));
}

}  // namespace

TEST_CASE("chapple_euclidean examples") {
  CHECK(chapple_euclidean(1.0, 0.5) == 0.0);
  CHECK(std::abs(chapple_euclidean(2.5, 1.0) - std::sqrt(1.25)) < 1e-15);
  const auto rep = analyze(EuclideanTriangle(EuclideanPoint(0, 0), EuclideanPoint(4, 0), EuclideanPoint(0, 3)));
  CHECK(std::abs(chapple_euclidean(rep.circumradius, rep.inradius) - rep.center_distance) < 1e-10);
  CHECK(kind_of([] { chapple_euclidean(1.0, 0.6); }) == ErrorKind::UnrealizablePair);
}

TEST_CASE("residual normalization") {
  const auto small = make_residual(0.25, 0.5);
  CHECK(small.raw == -0.25);
  CHECK(small.normalized == -0.25);
  const auto big = make_residual(1000.0, 999.0);
  CHECK(big.raw == 1.0);
  CHECK(big.normalized == doctest::Approx(1e-3));
}

TEST_CASE("center-distance identities on constructions") {
  for (double theta : {0.05, 0.4, 1.2}) {
    const auto rep = analyze(polar_triangle(theta, 0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0));
    CHECK(std::abs(residual_cn_spherical(rep.circumradius, rep.inradius, rep.center_distance).raw) < 1e-12);
    CHECK(std::abs(std::tan(rep.circumradius) - 2.0 * std::tan(rep.inradius)) < 1e-12 * std::tan(rep.circumradius));
  }
  for (double rho : {0.05, 0.8, 2.0}) {
    const auto rep = analyze(hyperbolic_equilateral(rho));
    CHECK(std::abs(residual_cn_hyperbolic(rep.circumradius, rep.inradius, rep.center_distance).normalized) < 1e-12);
    CHECK(std::abs(std::tanh(rep.circumradius) - 2.0 * std::tanh(rep.inradius)) < 1e-12);
    CHECK(std::abs(residual_alabdullatif(rep.circumradius, rep.inradius, rep.center_distance).normalized) < 1e-10);
  }
  for (const auto& t : sample<SphericalPoint>(make_config(Geometry::spherical, Family::uniform, 2000, 4))) {
    const auto rep = analyze(t);
    CHECK(std::abs(residual_cn_spherical(rep.circumradius, rep.inradius, rep.center_distance).raw) < 1e-10);
  }
  for (const auto& t : sample<HyperbolicPoint>(make_config(Geometry::hyperbolic, Family::uniform, 2000, 4))) {
    const auto rep = analyze(t);
    CHECK(std::abs(residual_cn_hyperbolic(rep.circumradius, rep.inradius, rep.center_distance).normalized) < 1e-9);
    CHECK(std::abs(residual_alabdullatif(rep.circumradius, rep.inradius, rep.center_distance).normalized) < 1e-8);
  }
}

TEST_CASE("great-circle triangles satisfy the spherical identity with tan d = 0") {
  for (const auto& t : sample<SphericalPoint>(make_config(Geometry::spherical, Family::great_circle, 200, 2))) {
    const auto rep = analyze(t);
    CHECK(std::abs(residual_cn_spherical(rep.circumradius, rep.inradius, rep.center_distance).raw) < 1e-10);
  }
}

TEST_CASE("center-distance identity in the flat limit") {
  // Planar data fed to the hyperbolic identity: the residual shrinks with scale.
  CHECK(std::abs(residual_cn_hyperbolic(0.02, 0.01, chapple_euclidean(0.02, 0.01)).raw) < 1e-6);
  CHECK(std::abs(residual_cn_hyperbolic(0.025, 0.01, chapple_euclidean(0.025, 0.01)).raw) < 1e-6);

  for (double scale : {1e-1, 1e-2, 1e-3}) {
    auto cfg = make_config(Geometry::hyperbolic, Family::flat_scaled, 1, 0);
    cfg.family_parameter = scale;
    const auto rep = analyze(canonical_member<HyperbolicPoint>(cfg));
    CHECK(std::abs(residual_alabdullatif(rep.circumradius, rep.inradius, rep.center_distance).raw) < 1e-6);
  }
}

TEST_CASE("tanh-inradius identity reports a singular denominator") {
  const double R = 1.0, r = 0.3;
  const double d = std::acosh(std::cosh(R) * std::cosh(r)) - r;
  CHECK(kind_of([&] { residual_alabdullatif(R, r, d); }) == ErrorKind::SingularDenominator);
  CHECK_NOTHROW(residual_alabdullatif(R, r, d + 0.01));
}

TEST_CASE("closed-form predictions") {
  CHECK(predict_d_spherical(kPi / 2.0, 0.3) == 0.0);
  CHECK(predict_d_spherical(kPi / 2.0 - 5e-10, 0.3) == 0.0);
  const double R = 0.7;
  CHECK(std::abs(predict_d_spherical(R, std::atan(std::tan(R) / 2.0))) < 1e-7);
  CHECK(std::abs(predict_d_hyperbolic(R, std::atanh(std::tanh(R) / 2.0))) < 1e-7);
  CHECK(kind_of([] { predict_d_spherical(0.5, 0.4); }) == ErrorKind::UnrealizablePair);
  CHECK(kind_of([] { predict_d_hyperbolic(0.5, 0.4); }) == ErrorKind::UnrealizablePair);

  const double flat = std::atanh(predict_d_hyperbolic(0.02, 0.005));
  CHECK(std::abs(flat - chapple_euclidean(0.02, 0.005)) < 1e-5);

  double worst_s = 0.0, worst_h = 0.0;
  for (const auto& t : sample<SphericalPoint>(make_config(Geometry::spherical, Family::uniform, 5000, 12))) {
    const auto rep = analyze(t);
    worst_s = std::max(worst_s, std::abs(predict_d_spherical(rep.circumradius, rep.inradius) -
                                         std::tan(rep.center_distance)));
  }
  for (const auto& t : sample<HyperbolicPoint>(make_config(Geometry::hyperbolic, Family::uniform, 5000, 12))) {
    const auto rep = analyze(t);
    worst_h = std::max(worst_h, std::abs(predict_d_hyperbolic(rep.circumradius, rep.inradius) -
                                         std::tanh(rep.center_distance)));
  }
  CHECK(worst_s < 1e-9);
  CHECK(worst_h < 1e-9);
}

TEST_CASE("squared tangent forms") {
  const double R = 0.9;
  CHECK(std::abs(residual_tan_squared(R, std::atan(std::tan(R) / 2.0), 0.0).raw) < 1e-15);
  CHECK(std::abs(residual_tanh_squared(R, std::atanh(std::tanh(R) / 2.0), 0.0).raw) < 1e-15);
  for (const auto& t : sample<SphericalPoint>(make_config(Geometry::spherical, Family::uniform, 2000, 6))) {
    const auto rep = analyze(t);
    CHECK(std::abs(residual_tan_squared(rep.circumradius, rep.inradius, rep.center_distance).normalized) < 1e-9);
  }
  for (const auto& t : sample<HyperbolicPoint>(make_config(Geometry::hyperbolic, Family::uniform, 2000, 6))) {
    const auto rep = analyze(t);
    CHECK(std::abs(residual_tanh_squared(rep.circumradius, rep.inradius, rep.center_distance).normalized) < 1e-9);
  }
}

TEST_CASE("property: squared forms follow from the center-distance identity on 1e5 synthetic triples") {
  oracle::Random rng(77);
  double worst_s = 0.0, worst_h = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double R = rng.uniform(1e-3, kPi / 2.0 - 1e-3);
    const double r = std::atan(std::tan(R) / 2.0) * rng.uniform(1e-3, 1.0);
    const double d = spherical_d_from_identity(R, r);
    worst_s = std::max(worst_s, std::abs(residual_tan_squared(R, r, d).normalized));

    const double HR = rng.uniform(1e-3, 6.0);
    const double hr = std::atanh(std::tanh(HR) / 2.0) * rng.uniform(1e-3, 1.0);
    const double hd = hyperbolic_d_from_identity(HR, hr);
    worst_h = std::max(worst_h, std::abs(residual_tanh_squared(HR, hr, hd).normalized));
  }
  CHECK(worst_s < 1e-9);
  CHECK(worst_h < 1e-9);
}

TEST_CASE("property: the identities agree with each other on sampled triangles") {
  double worst = 0.0;
  for (const auto& t : sample<SphericalPoint>(make_config(Geometry::spherical, Family::uniform, 5000, 21))) {
    const auto rep = analyze(t);
    const double constructed = std::tan(rep.center_distance);
    const double from_identity = std::tan(spherical_d_from_identity(rep.circumradius, rep.inradius));
    const double predicted = predict_d_spherical(rep.circumradius, rep.inradius);
    worst = std::max({worst, std::abs(constructed - from_identity), std::abs(constructed - predicted),
                      std::abs(from_identity - predicted)});
  }
  for (const auto& t : sample<HyperbolicPoint>(make_config(Geometry::hyperbolic, Family::uniform, 5000, 21))) {
    const auto rep = analyze(t);
    const double constructed = std::tanh(rep.center_distance);
    const double from_identity = std::tanh(hyperbolic_d_from_identity(rep.circumradius, rep.inradius));
    const double predicted = predict_d_hyperbolic(rep.circumradius, rep.inradius);
    worst = std::max({worst, std::abs(constructed - from_identity), std::abs(constructed - predicted),
                      std::abs(from_identity - predicted)});
    CHECK(std::abs(residual_alabdullatif(rep.circumradius, rep.inradius, rep.center_distance).normalized) < 1e-8);
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("flat limit: predicted distances approach the planar value quadratically") {
  const auto base = analyze(canonical_member<EuclideanPoint>([] {
    auto c = make_config(Geometry::euclidean, Family::flat_scaled, 1, 0);
    c.family_parameter = 1.0;
    return c;
  }()));
  const double planar = chapple_euclidean(base.circumradius, base.inradius);
  REQUIRE(planar > 0.1);

  auto relative_errors = [&](Geometry g) {
    std::vector<double> errs;
    for (double s : {1e-1, 1e-2, 1e-3}) {
      auto cfg = make_config(g, Family::flat_scaled, 1, 0);
      cfg.family_parameter = s;
      double d = 0.0;
      if (g == Geometry::spherical) {
        const auto rep = analyze(canonical_member<SphericalPoint>(cfg));
        d = std::atan(predict_d_spherical(rep.circumradius, rep.inradius));
      } else {
        const auto rep = analyze(canonical_member<HyperbolicPoint>(cfg));
        d = std::atanh(predict_d_hyperbolic(rep.circumradius, rep.inradius));
      }
      errs.push_back(std::abs(d / s - planar) / planar);
    }
    return errs;
  };
  for (Geometry g : {Geometry::spherical, Geometry::hyperbolic}) {
    const auto e = relative_errors(g);
    CAPTURE(to_string(g));
    CHECK(e[0] / e[1] == doctest::Approx(100.0).epsilon(0.2));
    CHECK(e[1] / e[2] == doctest::Approx(100.0).epsilon(0.2));
  }
}

TEST_CASE("predicted spherical distance decays to zero as R approaches pi/2") {
  std::vector<double> ladder;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double theta = kPi / 2.0 - 0.3 * std::pow(0.8, k);
    const auto rep = analyze(polar_triangle(theta, 0.0, 1.9, 4.0));
    const double p = predict_d_spherical(rep.circumradius, rep.inradius);
    ladder.push_back(p);
    worst = std::max(worst, std::abs(p - std::abs(std::tan(rep.center_distance))));
  }
  CHECK(worst < 1e-8);
  int increases = 0;
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i] > ladder[i - 1]) ++increases;
  }
  CHECK(increases == 0);
  CHECK(ladder.back() < 1e-8);
}

TEST_CASE("hyperbolic discriminant") {
  CHECK(discriminant_hyperbolic(1.3, 0.0) == 1.0);
  CHECK(discriminant_hyperbolic(5.0, 1e-14) == doctest::Approx(1.0));

  // On the equality curve tanh R = 2 tanh r the discriminant is
  // 1 - 5T^2/4 + T^4/4 = (T^2 - 1)(T^2 - 4)/4 with T = tanh R: zero only at
  // T in {1, -1, 2, -2}, and positive for 0 < T < 1.
  for (double T : {1.0, -1.0, 2.0, -2.0}) {
    CHECK((T * T - 1.0) * (T * T - 4.0) / 4.0 == 0.0);
  }
  double prev = 1.0;
  for (double R = 0.05; R < 8.0; R += 0.05) {
    const double T = std::tanh(R);
    const double D = discriminant_hyperbolic(R, std::atanh(T / 2.0));
    CHECK(D > 0.0);
    CHECK(std::abs(D - (T * T - 1.0) * (T * T - 4.0) / 4.0) < 1e-14);
    CHECK(D < prev);
    prev = D;
  }

  double lowest = 1.0;
  for (const auto& t : sample<HyperbolicPoint>(make_config(Geometry::hyperbolic, Family::uniform, 5000, 13))) {
    const auto rep = analyze(t);
    lowest = std::min(lowest, discriminant_hyperbolic(rep.circumradius, rep.inradius));
  }
  CHECK(lowest > 0.0);
}

TEST_CASE("inequality slack") {
  CHECK(inequality_slack(Geometry::euclidean, 2.5, 1.0).value == 0.5);
  const auto right = inequality_slack(Geometry::spherical, kPi / 2.0, 0.3);
  CHECK(right.right_angle);
  CHECK(right.value == std::numeric_limits<double>::infinity());

  for (double theta : {0.1, 0.7, 1.4}) {
    const auto rep = analyze(polar_triangle(theta, 0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0));
    CHECK(std::abs(inequality_slack(Geometry::spherical, rep.circumradius, rep.inradius).value) < 1e-10);
  }
  for (double rho : {0.1, 1.0, 3.0}) {
    const auto rep = analyze(hyperbolic_equilateral(rho));
    CHECK(std::abs(inequality_slack(Geometry::hyperbolic, rep.circumradius, rep.inradius).value) < 1e-10);
  }
  const auto e = analyze(EuclideanTriangle(EuclideanPoint(0, 0), EuclideanPoint(2, 0), EuclideanPoint(1, std::sqrt(3.0))));
  CHECK(std::abs(inequality_slack(Geometry::euclidean, e.circumradius, e.inradius).value) < 1e-10);
}

TEST_CASE("evaluate fills the geometry-specific fields") {
  const auto e = evaluate(analyze(EuclideanTriangle(EuclideanPoint(0, 0), EuclideanPoint(4, 0), EuclideanPoint(0, 3))));
  REQUIRE(e.chapple_euler.has_value());
  CHECK(std::abs(e.chapple_euler->raw) < 1e-15);
  CHECK_FALSE(e.discriminant.has_value());
  CHECK(e.slack.value == doctest::Approx(0.5));

  const auto h = evaluate(analyze(hyperbolic_equilateral(0.8)));
  CHECK(h.geometry == Geometry::hyperbolic);
  CHECK(h.discriminant.has_value());
  CHECK(h.tanh_inradius.has_value());
  CHECK(h.squared_tangent.has_value());
  CHECK(h.prediction_error < 1e-7);

  const auto s = evaluate(analyze(polar_triangle(0.8, 0.0, 1.7, 3.9)));
  CHECK_FALSE(s.tanh_inradius.has_value());
  CHECK(s.center_distance.has_value());
  CHECK(s.prediction_error < 1e-9);
}
