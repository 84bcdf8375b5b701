#pragma once

// Command-line front end: verification campaigns, single-triangle reports
// and parameter sweeps. Everything here is callable in-process; tools/main.cpp
// only forwards argv to run().

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "noneuclid/identities.hpp"
#include "noneuclid/sampler.hpp"

namespace noneuclid::cli {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr double kDefaultTolerance = 1e-8;
/// Failures beyond this many per geometry are counted but not dumped.
inline constexpr std::size_t kMaxListedFailures = 100;

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitSamplingExhausted = 3,
  kExitIdealCircumcenter = 4,
  kExitUnwritable = 5,
};

enum class OutputFormat { text, json, csv };

// ---- input models ---------------------------------------------------------

/// "a,b" or "a,b,c" -> numbers; throws std::invalid_argument.
std::vector<double> parse_coordinates(std::string_view text);

SphericalPoint spherical_from_latlon(double lat_deg, double lon_deg);
/// Poincare disk (x, y), x^2 + y^2 < 1, lifted to the hyperboloid.
HyperbolicPoint hyperbolic_from_disk(double x, double y);

// ---- verification campaign ------------------------------------------------

struct VerifyOptions {
  std::vector<Geometry> geometries{Geometry::euclidean, Geometry::spherical, Geometry::hyperbolic};
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  Family family = Family::uniform;
  std::optional<double> family_parameter;
  std::optional<double> spread;
  /// Worker threads; output does not depend on it.
  unsigned threads = 1;
};

struct ResidualStats {
  double max_raw = 0.0;
  double max_normalized = 0.0;
  std::size_t evaluated = 0;

  void add(const Residual& r);
  void merge(const ResidualStats& other);
};

struct Failure {
  std::size_t index = 0;
  std::vector<std::vector<double>> vertices;
  std::vector<std::string> reasons;
};

struct GeometrySummary {
  Geometry geometry = Geometry::euclidean;
  SampleConfig sample_config;
  std::size_t count = 0;
  double max_circumcenter_spread = 0.0;
  double max_incenter_spread = 0.0;
  ResidualStats chapple_euler;
  ResidualStats center_distance;
  ResidualStats tanh_inradius;
  ResidualStats squared_tangent;
  double max_prediction_error = 0.0;
  std::optional<double> min_slack;
  std::size_t right_angle_count = 0;
  std::size_t center_distance_near_pi = 0;
  std::optional<double> min_discriminant;
  std::size_t singular_denominator_count = 0;
  std::size_t failure_count = 0;
  std::vector<Failure> failures;

  /// Order-sensitive only through the failure list, which keeps `this`
  /// first; call in substream index order.
  void merge(const GeometrySummary& other);
};

struct RunReport {
  VerifyOptions options;
  std::vector<GeometrySummary> summaries;

  bool passed() const noexcept;
};

SampleConfig sample_config_for(const VerifyOptions& options, Geometry geometry);

/// Throws GeometryError (InvalidConfig, SamplingExhausted).
RunReport run_verification(const VerifyOptions& options);

nlohmann::json to_json(const RunReport& report);
/// Sorted keys, newline terminated.
std::string render(const RunReport& report, OutputFormat format);

// ---- sweeps ---------------------------------------------------------------

struct SweepRow {
  double parameter = 0.0;
  double circumradius = 0.0;
  double inradius = 0.0;
  double center_distance = 0.0;
  double predicted_distance = 0.0;
  std::optional<double> center_distance_residual;
  double slack = 0.0;
  std::optional<double> discriminant;
};

inline constexpr std::string_view kSweepHeader =
    "parameter,R,r,d,predicted_d,thm2_residual,inequality_slack,discriminant";

/// `steps` parameters from start to stop inclusive, linear or geometric.
std::vector<double> sweep_parameters(double start, double stop, std::size_t steps, bool log_spacing);

std::vector<SweepRow> run_sweep(Geometry geometry, Family family, const std::vector<double>& parameters);

std::string render_sweep_csv(const std::vector<SweepRow>& rows);

/// 17 significant digits.
std::string format_number(double value);

// ---- entry point ----------------------------------------------------------

/// Parses args (without the program name) and runs one subcommand. Returns
/// the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noneuclid::cli
