#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "noneuclid/cli.hpp"
#include "noneuclid/error.hpp"

namespace noneuclid::cli {

using nlohmann::json;

namespace {

// NaN propagates into maxima so a broken evaluation is never hidden.
double nan_max(double a, double b) {
  return std::isnan(a) || std::isnan(b) ? std::numeric_limits<double>::quiet_NaN() : std::max(a, b);
}

}  // namespace

void ResidualStats::add(const Residual& r) {
  ++evaluated;
  max_raw = nan_max(max_raw, std::abs(r.raw));
  max_normalized = nan_max(max_normalized, std::abs(r.normalized));
}

void ResidualStats::merge(const ResidualStats& other) {
  evaluated += other.evaluated;
  max_raw = nan_max(max_raw, other.max_raw);
  max_normalized = nan_max(max_normalized, other.max_normalized);
}

namespace {

std::optional<double> min_opt(std::optional<double> a, std::optional<double> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

void GeometrySummary::merge(const GeometrySummary& other) {
  count += other.count;
  max_circumcenter_spread = nan_max(max_circumcenter_spread, other.max_circumcenter_spread);
  max_incenter_spread = nan_max(max_incenter_spread, other.max_incenter_spread);
  chapple_euler.merge(other.chapple_euler);
  center_distance.merge(other.center_distance);
  tanh_inradius.merge(other.tanh_inradius);
  squared_tangent.merge(other.squared_tangent);
  max_prediction_error = nan_max(max_prediction_error, other.max_prediction_error);
  min_slack = min_opt(min_slack, other.min_slack);
  right_angle_count += other.right_angle_count;
  center_distance_near_pi += other.center_distance_near_pi;
  min_discriminant = min_opt(min_discriminant, other.min_discriminant);
  singular_denominator_count += other.singular_denominator_count;
  failure_count += other.failure_count;
  for (const auto& f : other.failures) {
    if (failures.size() >= kMaxListedFailures) break;
    failures.push_back(f);
  }
}

bool RunReport::passed() const noexcept {
  return std::all_of(summaries.begin(), summaries.end(),
                     [](const GeometrySummary& s) { return s.failure_count == 0; });
}

SampleConfig sample_config_for(const VerifyOptions& options, Geometry geometry) {
  SampleConfig cfg = make_config(geometry, options.family, options.samples, options.seed);
  if (options.family_parameter) cfg.family_parameter = *options.family_parameter;
  if (options.spread) cfg.max_vertex_spread = *options.spread;
  return cfg;
}

namespace {

template <class Point>
std::vector<double> coordinates(const Point& p) {
  if constexpr (Point::geometry == Geometry::euclidean) {
    return {p.x(), p.y()};
  } else {
    return {p.v()[0], p.v()[1], p.v()[2]};
  }
}

void check(std::vector<std::string>& reasons, bool ok, std::string_view what) {
  if (!ok) reasons.emplace_back(what);
}

// !(x <= tol) also catches NaN.
bool within(double x, double tol) { return std::abs(x) <= tol; }

template <class Point>
void accumulate(GeometrySummary& s, const Triangle<Point>& t, std::size_t index, double tol) {
  ++s.count;
  std::vector<std::string> reasons;
  try {
    const auto centers = analyze(t);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& v : t.vertices()) {
      const double x = distance(centers.circumcenter, v);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    const double cc_spread = hi - lo;
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (const auto& side : oriented_sides(t)) {
      const double x = point_to_geodesic(centers.incenter, side);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    const double ic_spread = hi - lo;
    s.max_circumcenter_spread = nan_max(s.max_circumcenter_spread, cc_spread);
    s.max_incenter_spread = nan_max(s.max_incenter_spread, ic_spread);
    check(reasons, within(cc_spread, tol), "circumcenter_spread");
    check(reasons, within(ic_spread, tol), "incenter_spread");
    check(reasons, lo > 0.0, "incenter_outside");

    const IdentityReport id = evaluate(centers);
    if (id.chapple_euler) {
      s.chapple_euler.add(*id.chapple_euler);
      check(reasons, within(id.chapple_euler->normalized, tol), "chapple_euler");
    }
    if (id.center_distance) {
      s.center_distance.add(*id.center_distance);
      check(reasons, within(id.center_distance->normalized, tol), "center_distance_identity");
    }
    if (id.tanh_inradius) {
      s.tanh_inradius.add(*id.tanh_inradius);
      check(reasons, within(id.tanh_inradius->normalized, tol), "tanh_inradius_identity");
    }
    if (id.tanh_inradius_singular) ++s.singular_denominator_count;
    if (id.squared_tangent) {
      s.squared_tangent.add(*id.squared_tangent);
      check(reasons, within(id.squared_tangent->normalized, tol), "squared_tangent_identity");
    }
    s.max_prediction_error = nan_max(s.max_prediction_error, id.prediction_error);
    check(reasons, within(id.prediction_error, tol), "closed_form_prediction");
    if (id.slack.right_angle) {
      ++s.right_angle_count;
    } else {
      s.min_slack = min_opt(s.min_slack, id.slack.value);
      check(reasons, id.slack.value >= -tol, "inequality_slack");
    }
    if (id.discriminant) {
      s.min_discriminant = min_opt(s.min_discriminant, *id.discriminant);
      check(reasons, *id.discriminant > 0.0, "discriminant");
    }
    if (Point::geometry == Geometry::spherical && centers.center_distance > std::numbers::pi / 2.0) {
      ++s.center_distance_near_pi;
    }
  } catch (const GeometryError& e) {
    reasons.emplace_back(to_string(e.kind()));
  }
  if (!reasons.empty()) {
    ++s.failure_count;
    if (s.failures.size() < kMaxListedFailures) {
      Failure f;
      f.index = index;
      for (const auto& v : t.vertices()) f.vertices.push_back(coordinates(v));
      f.reasons = std::move(reasons);
      s.failures.push_back(std::move(f));
    }
  }
}

template <class Point>
GeometrySummary summarize_substream(const SampleConfig& cfg, std::size_t k, double tol) {
  GeometrySummary s;
  s.geometry = cfg.geometry;
  s.sample_config = cfg;
  const auto triangles = sample_substream<Point>(cfg, k);
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    accumulate(s, triangles[i], k * kSubstreamSize + i, tol);
  }
  return s;
}

GeometrySummary summarize_unit(const SampleConfig& cfg, std::size_t k, double tol) {
  switch (cfg.geometry) {
    case Geometry::euclidean: return summarize_substream<EuclideanPoint>(cfg, k, tol);
    case Geometry::spherical: return summarize_substream<SphericalPoint>(cfg, k, tol);
    case Geometry::hyperbolic: return summarize_substream<HyperbolicPoint>(cfg, k, tol);
  }
  throw GeometryError(ErrorKind::InvalidConfig, "unknown geometry");
}

}  // namespace

RunReport run_verification(const VerifyOptions& options) {
  if (!(options.tolerance > 0.0) || !std::isfinite(options.tolerance)) {
    throw GeometryError(ErrorKind::InvalidConfig, "tolerance must be positive");
  }
  if (options.geometries.empty()) throw GeometryError(ErrorKind::InvalidConfig, "no geometry selected");

  struct Unit {
    std::size_t geometry_slot;
    std::size_t substream;
  };
  std::vector<SampleConfig> configs;
  std::vector<Unit> units;
  for (std::size_t g = 0; g < options.geometries.size(); ++g) {
    configs.push_back(sample_config_for(options, options.geometries[g]));
    validate(configs.back());
    for (std::size_t k = 0; k < substream_count(configs.back()); ++k) units.push_back({g, k});
  }

  std::vector<std::optional<GeometrySummary>> partial(units.size());
  std::vector<std::exception_ptr> errors(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next++; u < units.size(); u = next++) {
      try {
        partial[u] = summarize_unit(configs[units[u].geometry_slot], units[u].substream, options.tolerance);
      } catch (...) {
        errors[u] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(units.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  RunReport report;
  report.options = options;
  for (std::size_t g = 0; g < options.geometries.size(); ++g) {
    GeometrySummary total;
    total.geometry = options.geometries[g];
    total.sample_config = configs[g];
    report.summaries.push_back(total);
  }
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (errors[u]) std::rethrow_exception(errors[u]);
    report.summaries[units[u].geometry_slot].merge(*partial[u]);
  }
  return report;
}

namespace {

json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

json number_or_null(double v) { return number_or_null(std::optional<double>(v)); }

json residual_json(const ResidualStats& r) {
  return json{{"evaluated", r.evaluated},
              {"max_abs_normalized", number_or_null(r.max_normalized)},
              {"max_abs_raw", number_or_null(r.max_raw)}};
}

json summary_json(const GeometrySummary& s) {
  json j;
  j["count"] = s.count;
  j["max_vertex_spread"] = s.sample_config.max_vertex_spread;
  j["family_parameter"] = s.sample_config.family_parameter;
  j["max_circumcenter_spread"] = number_or_null(s.max_circumcenter_spread);
  j["max_incenter_spread"] = number_or_null(s.max_incenter_spread);
  j["closed_form_prediction"] = json{{"max_abs_error", number_or_null(s.max_prediction_error)}};
  j["min_inequality_slack"] = number_or_null(s.min_slack);
  switch (s.geometry) {
    case Geometry::euclidean:
      j["chapple_euler"] = residual_json(s.chapple_euler);
      break;
    case Geometry::spherical:
      j["center_distance_identity"] = residual_json(s.center_distance);
      j["squared_tangent_identity"] = residual_json(s.squared_tangent);
      j["right_angle_count"] = s.right_angle_count;
      j["center_distance_near_pi"] = s.center_distance_near_pi;
      break;
    case Geometry::hyperbolic:
      j["center_distance_identity"] = residual_json(s.center_distance);
      j["tanh_inradius_identity"] = residual_json(s.tanh_inradius);
      j["squared_tangent_identity"] = residual_json(s.squared_tangent);
      j["min_discriminant"] = number_or_null(s.min_discriminant);
      j["singular_denominator_count"] = s.singular_denominator_count;
      break;
  }
  j["failure_count"] = s.failure_count;
  json failures = json::array();
  for (const auto& f : s.failures) {
    failures.push_back(json{{"index", f.index}, {"reasons", f.reasons}, {"vertices", f.vertices}});
  }
  j["failures"] = failures;
  return j;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(std::optional<double> v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

json to_json(const RunReport& report) {
  json config;
  json geometries = json::array();
  for (Geometry g : report.options.geometries) geometries.push_back(std::string(to_string(g)));
  config["geometries"] = geometries;
  config["samples"] = report.options.samples;
  config["seed"] = report.options.seed;
  config["tolerance"] = report.options.tolerance;
  config["family"] = std::string(to_string(report.options.family));
  config["family_parameter"] = number_or_null(report.options.family_parameter);
  config["spread"] = number_or_null(report.options.spread);

  json results;
  for (const auto& s : report.summaries) results[std::string(to_string(s.geometry))] = summary_json(s);

  return json{{"config", config},
              {"results", results},
              {"passed", report.passed()},
              {"version", std::string(kVersion)}};
}

std::string render(const RunReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::json:
      return to_json(report).dump(2) + "\n";
    case OutputFormat::csv: {
      std::string out =
          "geometry,count,failure_count,max_circumcenter_spread,max_incenter_spread,"
          "chapple_euler,center_distance_identity,tanh_inradius_identity,squared_tangent_identity,"
          "closed_form_prediction,min_inequality_slack,min_discriminant,singular_denominator_count\r\n";
      for (const auto& s : report.summaries) {
        auto stat = [](const ResidualStats& r) { return r.evaluated ? format_number(r.max_normalized) : std::string(); };
        out += csv_field(to_string(s.geometry)) + "," + std::to_string(s.count) + "," +
               std::to_string(s.failure_count) + "," + format_number(s.max_circumcenter_spread) + "," +
               format_number(s.max_incenter_spread) + "," + stat(s.chapple_euler) + "," + stat(s.center_distance) + "," +
               stat(s.tanh_inradius) + "," + stat(s.squared_tangent) + "," + format_number(s.max_prediction_error) + "," +
               csv_number(s.min_slack) + "," + csv_number(s.min_discriminant) + "," +
               (s.geometry == Geometry::hyperbolic ? std::to_string(s.singular_denominator_count) : "") + "\r\n";
      }
      return out;
    }
    case OutputFormat::text: {
      std::ostringstream out;
      out << "noneuclid " << kVersion << "  family=" << to_string(report.options.family)
          << "  samples=" << report.options.samples << "  seed=" << report.options.seed
          << "  tol=" << format_number(report.options.tolerance) << "\n";
      for (const auto& s : report.summaries) {
        out << fmt::format("{:<11} count={} failures={}\n", to_string(s.geometry), s.count, s.failure_count);
        out << fmt::format("  equidistance spread   circum {:.3e}  in {:.3e}\n", s.max_circumcenter_spread,
                           s.max_incenter_spread);
        auto line = [&](std::string_view name, const ResidualStats& r) {
          if (r.evaluated) out << fmt::format("  {:<22} max|raw| {:.3e}  max|normalized| {:.3e}\n", name, r.max_raw, r.max_normalized);
        };
        line("chapple-euler", s.chapple_euler);
        line("center-distance", s.center_distance);
        line("tanh-inradius", s.tanh_inradius);
        line("squared-tangent", s.squared_tangent);
        out << fmt::format("  {:<22} max|error| {:.3e}\n", "closed-form d", s.max_prediction_error);
        if (s.min_slack) out << fmt::format("  {:<22} min {:.3e}\n", "inequality slack", *s.min_slack);
        if (s.right_angle_count) out << fmt::format("  {:<22} {}\n", "R = pi/2 members", s.right_angle_count);
        if (s.min_discriminant) out << fmt::format("  {:<22} min {:.6e}\n", "discriminant", *s.min_discriminant);
        if (s.geometry == Geometry::hyperbolic) {
          out << fmt::format("  {:<22} {}\n", "singular denominators", s.singular_denominator_count);
        }
      }
      out << (report.passed() ? "PASS" : "FAIL") << "\n";
      return out.str();
    }
  }
  return {};
}

std::vector<double> sweep_parameters(double start, double stop, std::size_t steps, bool log_spacing) {
  if (steps < 2 || !(start < stop) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw GeometryError(ErrorKind::InvalidConfig, "sweep needs start < stop and at least 2 steps");
  }
  if (log_spacing && !(start > 0.0)) {
    throw GeometryError(ErrorKind::InvalidConfig, "log spacing needs a positive start");
  }
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(steps - 1);
    out[i] = log_spacing ? start * std::pow(stop / start, f) : start + (stop - start) * f;
  }
  out.back() = stop;
  return out;
}

namespace {

template <class Point>
SweepRow sweep_row(Family family, double parameter) {
  SampleConfig cfg = make_config(Point::geometry, family, 1, 0);
  cfg.family_parameter = parameter;
  const auto centers = analyze(canonical_member<Point>(cfg));
  const IdentityReport id = evaluate(centers);
  SweepRow row;
  row.parameter = parameter;
  row.circumradius = centers.circumradius;
  row.inradius = centers.inradius;
  row.center_distance = centers.center_distance;
  switch (Point::geometry) {
    case Geometry::euclidean: row.predicted_distance = id.predicted; break;
    case Geometry::spherical: row.predicted_distance = std::atan(id.predicted); break;
    case Geometry::hyperbolic: row.predicted_distance = std::atanh(id.predicted); break;
  }
  if (id.center_distance) row.center_distance_residual = id.center_distance->raw;
  row.slack = id.slack.value;
  row.discriminant = id.discriminant;
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(Geometry geometry, Family family, const std::vector<double>& parameters) {
  std::vector<SweepRow> rows;
  rows.reserve(parameters.size());
  for (double p : parameters) {
    switch (geometry) {
      case Geometry::euclidean: rows.push_back(sweep_row<EuclideanPoint>(family, p)); break;
      case Geometry::spherical: rows.push_back(sweep_row<SphericalPoint>(family, p)); break;
      case Geometry::hyperbolic: rows.push_back(sweep_row<HyperbolicPoint>(family, p)); break;
    }
  }
  return rows;
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepHeader);
  out += "\r\n";
  for (const auto& r : rows) {
    out += format_number(r.parameter) + "," + format_number(r.circumradius) + "," + format_number(r.inradius) +
           "," + format_number(r.center_distance) + "," + format_number(r.predicted_distance) + "," +
           csv_number(r.center_distance_residual) + "," + format_number(r.slack) + "," + csv_number(r.discriminant) + "\r\n";
  }
  return out;
}

}  // namespace noneuclid::cli
