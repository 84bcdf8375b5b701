#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "noneuclid/centers.hpp"
#include "noneuclid/error.hpp"
#include "noneuclid/identities.hpp"
#include "noneuclid/sampler.hpp"
#include "support/oracles.hpp"

using namespace noneuclid;

namespace {

constexpr double kPi = std::numbers::pi;

template <class P>
bool same(const std::vector<Triangle<P>>& x, const std::vector<Triangle<P>>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      if (x[i].vertices()[k].v() != y[i].vertices()[k].v()) return false;
    }
  }
  return true;
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  return ErrorKind::InvalidPoint;
}

}  // namespace

TEST_CASE("random source matches the published reference values") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
  std::mt19937_64 engine(5489u);
  engine.discard(9999);
  CHECK(engine() == 9981545732273789042ull);

  Rng a = Rng::for_substream(3, 2);
  Rng b(splitmix64(3 + 2 * 0x9E3779B97F4A7C15ull));
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("equilateral spherical member sits at polar angle theta") {
  const double theta = 0.6;
  auto cfg = make_config(Geometry::spherical, Family::equilateral, 1, 0);
  cfg.family_parameter = theta;
  const auto t = canonical_member<SphericalPoint>(cfg);
  for (int i = 0; i < 3; ++i) {
    const Vec3 v = t.vertices()[i].v();
    CHECK(std::acos(v.z()) == doctest::Approx(theta).epsilon(1e-14));
    const double az = std::atan2(v.y(), v.x());
    const double expect = std::remainder(2.0 * kPi * i / 3.0, 2.0 * kPi);
    CHECK(std::abs(std::remainder(az - expect, 2.0 * kPi)) < 1e-14);
  }
  const auto all = sample<SphericalPoint>([&] {
    auto c = cfg;
    c.count = 5;
    return c;
  }());
  CHECK(same(std::vector<SphericalTriangle>{all[0]}, std::vector<SphericalTriangle>{t}));
}

TEST_CASE("sampling is deterministic and substreams concatenate") {
  auto cfg = make_config(Geometry::hyperbolic, Family::uniform, 2 * kSubstreamSize + 17, 9);
  const auto x = sample<HyperbolicPoint>(cfg), y = sample<HyperbolicPoint>(cfg);
  CHECK(x.size() == cfg.count);
  CHECK(same(x, y));
  const auto tail = sample_substream<HyperbolicPoint>(cfg, 2);
  CHECK(tail.size() == 17);
  CHECK(same(tail, std::vector<HyperbolicTriangle>(x.end() - 17, x.end())));

  cfg.seed = 10;
  CHECK_FALSE(same(x, sample<HyperbolicPoint>(cfg)));

  auto scfg = make_config(Geometry::spherical, Family::uniform, 500, 1);
  CHECK(same(sample<SphericalPoint>(scfg), sample<SphericalPoint>(scfg)));
  auto ecfg = make_config(Geometry::euclidean, Family::needle, 500, 1);
  CHECK(same(sample<EuclideanPoint>(ecfg), sample<EuclideanPoint>(ecfg)));
}

TEST_CASE("hyperbolic samples always have a real circumcenter") {
  const auto tris = sample<HyperbolicPoint>(make_config(Geometry::hyperbolic, Family::uniform, 10000, 5));
  int ideal = 0;
  for (const auto& t : tris) {
    const Vec3 m = oracle::jcross(t.b().v() - t.a().v(), t.c().v() - t.a().v());
    if (!(oracle::mdot(m, m) < 0.0)) ++ideal;
  }
  CHECK(ideal == 0);
}

TEST_CASE("every sampled triangle is valid in every family") {
  auto run = [](auto tag, Geometry g, Family f) {
    using P = decltype(tag);
    const auto tris = sample<P>(make_config(g, f, 2000, 3));
    int bad = 0;
    for (const auto& t : tris) {
      try {
        const auto rep = analyze(t);
        if (!(rep.inradius > 0.0 && rep.inradius < rep.circumradius && rep.center_distance >= 0.0)) ++bad;
        if (g == Geometry::spherical && f == Family::uniform && rep.circumradius > kSphericalCircumradiusCap) ++bad;
      } catch (const GeometryError&) {
        ++bad;
      }
    }
    CAPTURE(to_string(f));
    CHECK(tris.size() == 2000);
    CHECK(bad == 0);
  };
  for (Family f : {Family::uniform, Family::equilateral, Family::needle, Family::flat_scaled}) {
    run(EuclideanPoint(0, 0), Geometry::euclidean, f);
    run(SphericalPoint(Vec3(0, 0, 1)), Geometry::spherical, f);
    run(HyperbolicPoint(Vec3(1, 0, 0)), Geometry::hyperbolic, f);
  }
  run(SphericalPoint(Vec3(0, 0, 1)), Geometry::spherical, Family::great_circle);
}

TEST_CASE("equilateral family is the equality case") {
  double worst = 0.0;
  for (const auto& t : sample<SphericalPoint>(make_config(Geometry::spherical, Family::equilateral, 1000, 2))) {
    const auto rep = analyze(t);
    worst = std::max(worst, std::abs(inequality_slack(Geometry::spherical, rep.circumradius, rep.inradius).value));
  }
  for (const auto& t : sample<HyperbolicPoint>(make_config(Geometry::hyperbolic, Family::equilateral, 1000, 2))) {
    const auto rep = analyze(t);
    worst = std::max(worst, std::abs(inequality_slack(Geometry::hyperbolic, rep.circumradius, rep.inradius).value));
  }
  for (const auto& t : sample<EuclideanPoint>(make_config(Geometry::euclidean, Family::equilateral, 1000, 2))) {
    const auto rep = analyze(t);
    worst = std::max(worst, std::abs(inequality_slack(Geometry::euclidean, rep.circumradius, rep.inradius).value));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("needle and flat_scaled members have the requested shape") {
  auto cfg = make_config(Geometry::spherical, Family::needle, 1, 0);
  cfg.family_parameter = 0.4;
  auto t = canonical_member<SphericalPoint>(cfg);
  CHECK(distance(t.a(), t.b()) == doctest::Approx(0.4).epsilon(1e-12));
  const auto pole = side_pole(t.a(), t.b(), t.c());
  CHECK(point_to_geodesic(t.c(), pole) == doctest::Approx(4e-4).epsilon(1e-3));

  auto hcfg = make_config(Geometry::hyperbolic, Family::needle, 1, 0);
  const auto h = canonical_member<HyperbolicPoint>(hcfg);
  CHECK(distance(h.a(), h.b()) == doctest::Approx(hcfg.family_parameter).epsilon(1e-12));

  for (double s : {0.5, 0.01}) {
    auto fcfg = make_config(Geometry::euclidean, Family::flat_scaled, 1, 0);
    fcfg.family_parameter = s;
    const auto f = canonical_member<EuclideanPoint>(fcfg);
    const auto base = flat_base_triangle();
    for (int i = 0; i < 3; ++i) CHECK((f.vertices()[i].v() - s * base[i]).norm() < 1e-15);
  }
}

TEST_CASE("sampling exhaustion is reported") {
  auto cfg = make_config(Geometry::spherical, Family::uniform, 10, 0);
  cfg.max_vertex_spread = 1e-3;
  CHECK(kind_of([&] { sample<SphericalPoint>(cfg); }) == ErrorKind::SamplingExhausted);
}

TEST_CASE("invalid configurations are rejected") {
  auto base = make_config(Geometry::spherical, Family::uniform, 10, 0);
  auto bad = base;
  bad.count = 0;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::InvalidConfig);
  bad = base;
  bad.max_vertex_spread = 2.0;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::InvalidConfig);
  bad = base;
  bad.max_vertex_spread = -1.0;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::InvalidConfig);

  auto gc = make_config(Geometry::hyperbolic, Family::great_circle, 10, 0);
  CHECK(kind_of([&] { validate(gc); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([&] { sample<HyperbolicPoint>(gc); }) == ErrorKind::InvalidConfig);

  auto eq = make_config(Geometry::spherical, Family::equilateral, 10, 0);
  eq.family_parameter = 2.0;
  CHECK(kind_of([&] { validate(eq); }) == ErrorKind::InvalidConfig);
  eq.family_parameter = 0.0;
  CHECK(kind_of([&] { validate(eq); }) == ErrorKind::InvalidConfig);

  CHECK(kind_of([&] { sample<EuclideanPoint>(base); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([&] { canonical_member<SphericalPoint>(base); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("family names round-trip") {
  for (Family f : {Family::uniform, Family::equilateral, Family::needle, Family::great_circle, Family::flat_scaled}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK_FALSE(parse_family("scalene").has_value());
}
