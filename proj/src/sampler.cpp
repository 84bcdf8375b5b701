#include "noneuclid/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noneuclid/error.hpp"

namespace noneuclid {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void bad_config(const std::string& what) {
  throw GeometryError(ErrorKind::InvalidConfig, what);
}

Vec3 random_unit_quaternion_coeffs(Rng& rng, double& w) {
  // Marsaglia-style rejection in the 4-cube.
  for (;;) {
    const double a = rng.uniform(-1.0, 1.0), b = rng.uniform(-1.0, 1.0);
    const double c = rng.uniform(-1.0, 1.0), d = rng.uniform(-1.0, 1.0);
    const double n2 = a * a + b * b + c * c + d * d;
    if (n2 > 1e-6 && n2 <= 1.0) {
      const double inv = 1.0 / std::sqrt(n2);
      w = a * inv;
      return Vec3(b, c, d) * inv;
    }
  }
}

Eigen::Matrix3d random_rotation(Rng& rng) {
  double w = 0.0;
  const Vec3 xyz = random_unit_quaternion_coeffs(rng, w);
  return Eigen::Quaterniond(w, xyz.x(), xyz.y(), xyz.z()).toRotationMatrix();
}

Eigen::Matrix3d spatial_rotation(double angle) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(1, 1) = std::cos(angle);
  m(1, 2) = -std::sin(angle);
  m(2, 1) = std::sin(angle);
  m(2, 2) = std::cos(angle);
  return m;
}

// Rotation about the time axis, boost along x1, second rotation.
Eigen::Matrix3d random_lorentz(Rng& rng) {
  const double rapidity = rng.uniform(0.0, 0.5);
  Eigen::Matrix3d boost = Eigen::Matrix3d::Identity();
  boost(0, 0) = boost(1, 1) = std::cosh(rapidity);
  boost(0, 1) = boost(1, 0) = std::sinh(rapidity);
  return spatial_rotation(rng.uniform(0.0, 2.0 * kPi)) * boost *
         spatial_rotation(rng.uniform(0.0, 2.0 * kPi));
}

Vec2 random_in_disk(Rng& rng, double radius) {
  for (;;) {
    const Vec2 p(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    if (p.squaredNorm() < 1.0) return radius * p;
  }
}

Vec3 random_on_sphere(Rng& rng) {
  for (;;) {
    const Vec3 p(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const double n2 = p.squaredNorm();
    if (n2 > 1e-6 && n2 <= 1.0) return p / std::sqrt(n2);
  }
}

// Poincare disk point -> hyperboloid.
HyperbolicPoint lift_from_disk(const Vec2& p) {
  const double rho2 = p.squaredNorm();
  const double k = 1.0 / (1.0 - rho2);
  return HyperbolicPoint::from_timelike(Vec3((1.0 + rho2) * k, 2.0 * p.x() * k, 2.0 * p.y() * k));
}

template <class Point>
Point exp_at_origin(const Vec2& v) {
  if constexpr (Point::geometry == Geometry::euclidean) {
    return exp_at_origin_euclidean(v);
  } else if constexpr (Point::geometry == Geometry::spherical) {
    return exp_at_origin_spherical(v);
  } else {
    return exp_at_origin_hyperbolic(v);
  }
}

template <class Point>
Triangle<Point> random_isometric_copy(const Triangle<Point>& t, Rng& rng) {
  const auto& v = t.vertices();
  if constexpr (Point::geometry == Geometry::euclidean) {
    const double angle = rng.uniform(0.0, 2.0 * kPi);
    const Eigen::Rotation2Dd rot(angle);
    const Vec2 shift(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    auto move = [&](const EuclideanPoint& p) { return EuclideanPoint(rot * p.v() + shift); };
    return Triangle<Point>(move(v[0]), move(v[1]), move(v[2]));
  } else if constexpr (Point::geometry == Geometry::spherical) {
    const Eigen::Matrix3d rot = random_rotation(rng);
    auto move = [&](const SphericalPoint& p) { return SphericalPoint(rot * p.v()); };
    return Triangle<Point>(move(v[0]), move(v[1]), move(v[2]));
  } else {
    const Eigen::Matrix3d lorentz = random_lorentz(rng);
    auto move = [&](const HyperbolicPoint& p) { return HyperbolicPoint(lorentz * p.v()); };
    return Triangle<Point>(move(v[0]), move(v[1]), move(v[2]));
  }
}

template <class Point>
Triangle<Point> from_tangent(const std::array<Vec2, 3>& v) {
  return Triangle<Point>(exp_at_origin<Point>(v[0]), exp_at_origin<Point>(v[1]),
                         exp_at_origin<Point>(v[2]));
}

std::array<Vec2, 3> equilateral_tangent(double circumradius) {
  std::array<Vec2, 3> v;
  for (int i = 0; i < 3; ++i) {
    const double phi = 2.0 * kPi * i / 3.0;
    v[i] = circumradius * Vec2(std::cos(phi), std::sin(phi));
  }
  return v;
}

SphericalTriangle great_circle_member(double height, std::size_t global_index, Rng& rng) {
  double phi[3] = {0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0};
  double h[3] = {0.5 * height, 0.5 * height, 0.5 * height};
  if (global_index != 0) {
    // Jitter keeps every azimuth gap below pi, so the three minor arcs wrap
    // the whole circle.
    phi[1] += rng.uniform(-kPi / 6.0, kPi / 6.0);
    phi[2] += rng.uniform(-kPi / 6.0, kPi / 6.0);
    for (double& hi : h) hi = height * (0.5 + 0.5 * rng.uniform());
  }
  std::array<SphericalPoint, 3> p{SphericalPoint::from_direction(Vec3(std::cos(phi[0]), std::sin(phi[0]), h[0])),
                                  SphericalPoint::from_direction(Vec3(std::cos(phi[1]), std::sin(phi[1]), h[1])),
                                  SphericalPoint::from_direction(Vec3(std::cos(phi[2]), std::sin(phi[2]), h[2]))};
  SphericalTriangle t(p[0], p[1], p[2]);
  return global_index == 0 ? t : random_isometric_copy(t, rng);
}

template <class Point>
Triangle<Point> uniform_candidate(const SampleConfig& cfg, Rng& rng) {
  if constexpr (Point::geometry == Geometry::euclidean) {
    return Triangle<Point>(EuclideanPoint(random_in_disk(rng, 0.5 * cfg.max_vertex_spread)),
                           EuclideanPoint(random_in_disk(rng, 0.5 * cfg.max_vertex_spread)),
                           EuclideanPoint(random_in_disk(rng, 0.5 * cfg.max_vertex_spread)));
  } else if constexpr (Point::geometry == Geometry::spherical) {
    const SphericalPoint a(random_on_sphere(rng)), b(random_on_sphere(rng)), c(random_on_sphere(rng));
    const double spread = std::max({distance(a, b), distance(b, c), distance(c, a)});
    if (spread > cfg.max_vertex_spread) {
      throw GeometryError(ErrorKind::InvalidTriangle, "vertex spread above cap");
    }
    return Triangle<Point>(a, b, c);
  } else {
    const double radius = std::tanh(0.5 * cfg.max_vertex_spread);
    return Triangle<Point>(lift_from_disk(random_in_disk(rng, radius)),
                           lift_from_disk(random_in_disk(rng, radius)),
                           lift_from_disk(random_in_disk(rng, radius)));
  }
}

template <class Point>
Triangle<Point> candidate(const SampleConfig& cfg, std::size_t global_index, Rng& rng) {
  const double p = cfg.family_parameter;
  std::optional<Triangle<Point>> base;
  switch (cfg.family) {
    case Family::uniform:
      return uniform_candidate<Point>(cfg, rng);
    case Family::equilateral:
      base = from_tangent<Point>(equilateral_tangent(p));
      break;
    case Family::needle:
      base = from_tangent<Point>({Vec2(-0.5 * p, 0.0), Vec2(0.5 * p, 0.0), Vec2(0.0, kNeedleAspect * p)});
      break;
    case Family::flat_scaled: {
      auto v = flat_base_triangle();
      for (auto& x : v) x *= p;
      base = from_tangent<Point>(v);
      break;
    }
    case Family::great_circle:
      if constexpr (Point::geometry == Geometry::spherical) {
        return great_circle_member(p, global_index, rng);
      }
      bad_config("great_circle family is spherical only");
  }
  return global_index == 0 ? *base : random_isometric_copy(*base, rng);
}

template <class Point>
bool accepted(const SampleConfig& cfg, const Triangle<Point>& t) {
  const auto report = analyze(t);
  if constexpr (Point::geometry == Geometry::spherical) {
    if (cfg.family == Family::uniform && report.circumradius > kSphericalCircumradiusCap) return false;
  }
  return std::isfinite(report.circumradius) && std::isfinite(report.inradius) &&
         std::isfinite(report.center_distance) && report.inradius > 0.0 &&
         report.inradius < report.circumradius;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::uniform: return "uniform";
    case Family::equilateral: return "equilateral";
    case Family::needle: return "needle";
    case Family::great_circle: return "great_circle";
    case Family::flat_scaled: return "flat_scaled";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  for (Family f : {Family::uniform, Family::equilateral, Family::needle, Family::great_circle,
                   Family::flat_scaled}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

double default_spread(Geometry geometry) noexcept {
  switch (geometry) {
    case Geometry::euclidean: return 2.0;
    case Geometry::spherical: return 1.5;
    case Geometry::hyperbolic: return 2.0;
  }
  return 1.0;
}

double default_family_parameter(Family family, Geometry geometry) noexcept {
  switch (family) {
    case Family::uniform: return 0.0;
    case Family::equilateral: return 0.5;
    // Longer hyperbolic needles lie on a hypercycle and have no circumcircle.
    case Family::needle: return geometry == Geometry::hyperbolic ? 0.005 : 0.5;
    case Family::great_circle: return 1e-10;
    case Family::flat_scaled: return 0.1;
  }
  return 0.0;
}

SampleConfig make_config(Geometry geometry, Family family, std::size_t count, std::uint64_t seed) {
  return SampleConfig{geometry, count, seed, default_spread(geometry), family,
                      default_family_parameter(family, geometry)};
}

void validate(const SampleConfig& cfg) {
  if (cfg.count < 1) bad_config("count must be at least 1");
  if (!(cfg.max_vertex_spread > 0.0) || !std::isfinite(cfg.max_vertex_spread)) {
    bad_config("max_vertex_spread must be positive and finite");
  }
  if (cfg.family == Family::uniform) {
    if (cfg.geometry == Geometry::spherical && !(cfg.max_vertex_spread < kPi / 2.0)) {
      bad_config("spherical max_vertex_spread must be below pi/2");
    }
    return;
  }

  const double p = cfg.family_parameter;
  if (!(p > 0.0) || !std::isfinite(p)) bad_config("family_parameter must be positive and finite");
  const bool sphere = cfg.geometry == Geometry::spherical;
  switch (cfg.family) {
    case Family::uniform:
      break;
    case Family::equilateral:
      if (sphere && !(p < kPi / 2.0)) bad_config("spherical equilateral circumradius must be below pi/2");
      break;
    case Family::needle:
      if (sphere && !(p < kPi)) bad_config("spherical needle length must be below pi");
      break;
    case Family::great_circle:
      if (!sphere) bad_config("great_circle family is spherical only");
      if (p > 1e-3) bad_config("great_circle height bound must be at most 1e-3");
      break;
    case Family::flat_scaled: {
      double reach = 0.0;
      for (const auto& v : flat_base_triangle()) reach = std::max(reach, v.norm());
      if (sphere && !(p * reach < kPi / 2.0)) bad_config("flat_scaled scale too large for the sphere");
      break;
    }
  }
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Rng Rng::for_substream(std::uint64_t seed, std::size_t index) noexcept {
  return Rng(splitmix64(seed + static_cast<std::uint64_t>(index) * 0x9E3779B97F4A7C15ull));
}

std::array<Vec2, 3> flat_base_triangle() noexcept {
  return {Vec2(-0.60, -0.20), Vec2(0.70, -0.25), Vec2(-0.30, 0.35)};
}

EuclideanPoint exp_at_origin_euclidean(const Vec2& v) { return EuclideanPoint(v); }

SphericalPoint exp_at_origin_spherical(const Vec2& v) {
  const double rho = v.norm();
  if (rho == 0.0) return SphericalPoint(Vec3(0.0, 0.0, 1.0));
  const Vec2 dir = v / rho;
  return SphericalPoint::from_direction(Vec3(std::sin(rho) * dir.x(), std::sin(rho) * dir.y(), std::cos(rho)));
}

HyperbolicPoint exp_at_origin_hyperbolic(const Vec2& v) {
  const double rho = v.norm();
  if (rho == 0.0) return HyperbolicPoint(Vec3(1.0, 0.0, 0.0));
  const Vec2 dir = v / rho;
  return HyperbolicPoint::from_timelike(Vec3(std::cosh(rho), std::sinh(rho) * dir.x(), std::sinh(rho) * dir.y()));
}

std::size_t substream_count(const SampleConfig& cfg) noexcept {
  return (cfg.count + kSubstreamSize - 1) / kSubstreamSize;
}

template <class Point>
std::vector<Triangle<Point>> sample_substream(const SampleConfig& cfg, std::size_t index) {
  if (cfg.geometry != Point::geometry) bad_config("geometry does not match the requested point type");
  validate(cfg);
  const std::size_t first = index * kSubstreamSize;
  if (first >= cfg.count) return {};
  const std::size_t last = std::min(cfg.count, first + kSubstreamSize);

  Rng rng = Rng::for_substream(cfg.seed, index);
  std::vector<Triangle<Point>> out;
  out.reserve(last - first);
  std::uint64_t attempts = 0;
  while (out.size() < last - first) {
    ++attempts;
    if (attempts > kExhaustionAttempts && out.size() * 100 < attempts) {
      throw GeometryError(ErrorKind::SamplingExhausted,
                          "accepted " + std::to_string(out.size()) + " of " + std::to_string(attempts) +
                              " candidates for " + std::string(to_string(cfg.family)) + " " +
                              std::string(to_string(cfg.geometry)) + " triangles");
    }
    try {
      auto t = candidate<Point>(cfg, first + out.size(), rng);
      if (accepted(cfg, t)) out.push_back(std::move(t));
    } catch (const GeometryError& e) {
      if (e.kind() == ErrorKind::InvalidConfig) throw;
    }
  }
  return out;
}

template <class Point>
Triangle<Point> canonical_member(const SampleConfig& cfg) {
  if (cfg.geometry != Point::geometry) bad_config("geometry does not match the requested point type");
  if (cfg.family == Family::uniform) bad_config("uniform family has no canonical member");
  validate(cfg);
  Rng rng = Rng::for_substream(cfg.seed, 0);
  auto t = candidate<Point>(cfg, 0, rng);
  if (!accepted(cfg, t)) {
    throw GeometryError(ErrorKind::InvalidTriangle, "family parameter gives no usable triangle");
  }
  return t;
}

template EuclideanTriangle canonical_member<EuclideanPoint>(const SampleConfig&);
template SphericalTriangle canonical_member<SphericalPoint>(const SampleConfig&);
template HyperbolicTriangle canonical_member<HyperbolicPoint>(const SampleConfig&);

template std::vector<EuclideanTriangle> sample_substream<EuclideanPoint>(const SampleConfig&, std::size_t);
template std::vector<SphericalTriangle> sample_substream<SphericalPoint>(const SampleConfig&, std::size_t);
template std::vector<HyperbolicTriangle> sample_substream<HyperbolicPoint>(const SampleConfig&, std::size_t);

}  // namespace noneuclid
