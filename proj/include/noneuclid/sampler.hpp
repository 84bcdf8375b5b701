#pragma once

// Seeded triangle populations for the verification harness.
//
// Random source: every substream k of a run owns a std::mt19937_64 seeded
// with splitmix64(seed + k * 0x9E3779B97F4A7C15). Uniform reals in [0, 1)
// are (x >> 11) * 2^-53 for a raw 64-bit draw x. Both algorithms are fully
// specified, so a run is reproducible across platforms and standard
// libraries. Substream k holds sample indices [k * kSubstreamSize,
// (k + 1) * kSubstreamSize).

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "noneuclid/centers.hpp"

namespace noneuclid {

enum class Family { uniform, equilateral, needle, great_circle, flat_scaled };

std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

inline constexpr std::size_t kSubstreamSize = 4096;
inline constexpr std::uint64_t kExhaustionAttempts = 1'000'000;
inline constexpr double kSphericalCircumradiusCap = std::numbers::pi / 2.0 - 1e-3;
/// Third vertex of a needle sits this fraction of the base length off the side.
inline constexpr double kNeedleAspect = 1e-3;

struct SampleConfig {
  Geometry geometry = Geometry::spherical;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  /// uniform: largest pairwise vertex distance (spherical, euclidean) or
  /// largest distance from the origin (hyperbolic).
  double max_vertex_spread = 1.0;
  Family family = Family::uniform;
  /// equilateral: circumradius; needle: base length; great_circle: bound on
  /// the off-circle height; flat_scaled: scale factor. Unused for uniform.
  double family_parameter = 0.0;
};

double default_spread(Geometry geometry) noexcept;
double default_family_parameter(Family family, Geometry geometry) noexcept;

/// Config with the geometry's default spread and the family's default
/// parameter.
SampleConfig make_config(Geometry geometry, Family family, std::size_t count, std::uint64_t seed);

/// Throws InvalidConfig.
void validate(const SampleConfig& cfg);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_substream(std::uint64_t seed, std::size_t index) noexcept;

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Vertices of the fixed planar triangle scaled by the flat_scaled family.
std::array<Vec2, 3> flat_base_triangle() noexcept;

/// Exponential map at the model origin: the point at distance |v| from the
/// origin in direction v. The origin is (0,0) in the plane, the north pole
/// (0,0,1) on the sphere and (1,0,0) on the hyperboloid.
EuclideanPoint exp_at_origin_euclidean(const Vec2& v);
SphericalPoint exp_at_origin_spherical(const Vec2& v);
HyperbolicPoint exp_at_origin_hyperbolic(const Vec2& v);

std::size_t substream_count(const SampleConfig& cfg) noexcept;

/// Members of substream `index`, in index order. Throws InvalidConfig for a
/// geometry mismatch and SamplingExhausted when rejection runs away.
template <class Point>
std::vector<Triangle<Point>> sample_substream(const SampleConfig& cfg, std::size_t index);

/// Member 0 of a parametric family (the un-moved canonical placement),
/// built without rejection. Throws InvalidConfig for the uniform family and
/// InvalidTriangle when the parameter gives no usable triangle.
template <class Point>
Triangle<Point> canonical_member(const SampleConfig& cfg);

/// All cfg.count members: the concatenation of every substream.
template <class Point>
std::vector<Triangle<Point>> sample(const SampleConfig& cfg) {
  std::vector<Triangle<Point>> out;
  out.reserve(cfg.count);
  for (std::size_t k = 0; k < substream_count(cfg); ++k) {
    auto part = sample_substream<Point>(cfg, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace noneuclid
