#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "noneuclid/cli.hpp"
#include "noneuclid/error.hpp"

namespace noneuclid::cli {

using nlohmann::json;

namespace {

constexpr const char* kSeedEnv = "NONEUCLID_SEED";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  return OutputFormat::text;
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError(fmt::format("{} must be an unsigned 64-bit integer, got '{}'", kSeedEnv, text));
  }
  return value;
}

// Writes to `path`, or to `out` when path is empty.
int emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (file) file << text;
  if (!file) {
    err << "error: cannot write " << path << "\n";
    return kExitUnwritable;
  }
  return kExitOk;
}

// ---- triangle -------------------------------------------------------------

template <class Point>
json point_json(const Point& p) {
  if constexpr (Point::geometry == Geometry::euclidean) {
    return json::array({p.x(), p.y()});
  } else {
    return json::array({p.v()[0], p.v()[1], p.v()[2]});
  }
}

json residual_json(const std::optional<Residual>& r) {
  if (!r) return nullptr;
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return json{{"normalized", num(r->normalized)}, {"raw", num(r->raw)}};
}

template <class Point>
json triangle_report(const Triangle<Point>& t) {
  const auto centers = analyze(t);
  const auto id = evaluate(centers);
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json vertices = json::array();
  for (const auto& v : t.vertices()) vertices.push_back(point_json(v));
  json identities{{"closed_form_prediction", {{"abs_error", num(id.prediction_error)}, {"predicted", num(id.predicted)}}},
                  {"inequality_slack", num(id.slack.value)},
                  {"right_angle", id.slack.right_angle}};
  if (id.chapple_euler) identities["chapple_euler"] = residual_json(id.chapple_euler);
  if (id.center_distance) identities["center_distance_identity"] = residual_json(id.center_distance);
  if (id.squared_tangent) identities["squared_tangent_identity"] = residual_json(id.squared_tangent);
  if (Point::geometry == Geometry::hyperbolic) {
    identities["tanh_inradius_identity"] = residual_json(id.tanh_inradius);
    identities["tanh_inradius_singular"] = id.tanh_inradius_singular;
    identities["discriminant"] = num(*id.discriminant);
  }
  return json{{"geometry", std::string(to_string(Point::geometry))},
              {"vertices", vertices},
              {"centers",
               {{"circumcenter", point_json(centers.circumcenter)},
                {"incenter", point_json(centers.incenter)},
                {"R", centers.circumradius},
                {"r", centers.inradius},
                {"d", centers.center_distance}}},
              {"identities", identities},
              {"version", std::string(kVersion)}};
}

std::string triangle_text(const json& report) {
  std::string out = fmt::format("{} triangle\n", report["geometry"].get<std::string>());
  const auto& c = report["centers"];
  out += fmt::format("  R = {}\n  r = {}\n  d = {}\n", format_number(c["R"].get<double>()),
                     format_number(c["r"].get<double>()), format_number(c["d"].get<double>()));
  out += "  circumcenter = " + c["circumcenter"].dump() + "\n";
  out += "  incenter     = " + c["incenter"].dump() + "\n";
  for (const auto& [key, value] : report["identities"].items()) {
    out += "  " + key + " = " + value.dump() + "\n";
  }
  return out;
}

std::vector<double> expect_coords(const std::string& text, std::size_t n, std::string_view model) {
  std::vector<double> c;
  try {
    c = parse_coordinates(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (c.size() != n) {
    throw UsageError(fmt::format("model '{}' expects {} coordinates per vertex, got '{}'", model, n, text));
  }
  return c;
}

json build_triangle_report(Geometry geometry, const std::string& model, const std::vector<std::string>& vertices) {
  switch (geometry) {
    case Geometry::euclidean: {
      if (model != "xy") throw UsageError("euclidean vertices use --model xy");
      std::vector<EuclideanPoint> p;
      for (const auto& v : vertices) {
        const auto c = expect_coords(v, 2, model);
        p.emplace_back(c[0], c[1]);
      }
      return triangle_report(EuclideanTriangle(p[0], p[1], p[2]));
    }
    case Geometry::spherical: {
      if (model != "latlon" && model != "vector") throw UsageError("spherical vertices use --model latlon or vector");
      std::vector<SphericalPoint> p;
      for (const auto& v : vertices) {
        if (model == "latlon") {
          const auto c = expect_coords(v, 2, model);
          p.push_back(spherical_from_latlon(c[0], c[1]));
        } else {
          const auto c = expect_coords(v, 3, model);
          p.emplace_back(Vec3(c[0], c[1], c[2]));
        }
      }
      return triangle_report(SphericalTriangle(p[0], p[1], p[2]));
    }
    case Geometry::hyperbolic: {
      if (model != "disk" && model != "vector") throw UsageError("hyperbolic vertices use --model disk or vector");
      std::vector<HyperbolicPoint> p;
      for (const auto& v : vertices) {
        if (model == "disk") {
          const auto c = expect_coords(v, 2, model);
          p.push_back(hyperbolic_from_disk(c[0], c[1]));
        } else {
          const auto c = expect_coords(v, 3, model);
          p.emplace_back(Vec3(c[0], c[1], c[2]));
        }
      }
      return triangle_report(HyperbolicTriangle(p[0], p[1], p[2]));
    }
  }
  throw UsageError("unknown geometry");
}

std::string default_model(Geometry g) {
  switch (g) {
    case Geometry::euclidean: return "xy";
    case Geometry::spherical: return "latlon";
    case Geometry::hyperbolic: return "disk";
  }
  return "xy";
}

// "start:stop:steps"
std::tuple<double, double, std::size_t> parse_range(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) throw UsageError("--range expects start:stop:steps");
  try {
    const auto start = parse_coordinates(text.substr(0, first));
    const auto stop = parse_coordinates(text.substr(first + 1, second - first - 1));
    const auto steps = parse_coordinates(text.substr(second + 1));
    if (start.size() != 1 || stop.size() != 1 || steps.size() != 1 || steps[0] != std::floor(steps[0]) ||
        steps[0] < 2.0) {
      throw UsageError("--range expects start:stop:steps with an integer steps >= 2");
    }
    if (!(start[0] < stop[0])) throw UsageError("--range needs start < stop");
    return {start[0], stop[0], static_cast<std::size_t>(steps[0])};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Triangle centers and Chapple-Euler type identities in constant-curvature geometries",
               "noneuclid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  const std::vector<std::string> geometry_names{"euclidean", "spherical", "hyperbolic"};
  const std::vector<std::string> family_names{"uniform", "equilateral", "needle", "great_circle", "flat_scaled"};

  // verify
  auto* verify = app.add_subcommand("verify", "Sample triangles and check every identity and inequality");
  std::string v_geometry = "all";
  long long v_samples = 10000;
  std::uint64_t v_seed = 0;
  double v_tol = kDefaultTolerance;
  std::string v_family = "uniform";
  std::optional<double> v_param;
  std::optional<double> v_spread;
  std::string v_format = "text";
  std::string v_output;
  unsigned v_threads = 1;
  verify->add_option("--geometry", v_geometry, "euclidean, spherical, hyperbolic or all")
      ->check(CLI::IsMember({"all", "euclidean", "spherical", "hyperbolic"}));
  verify->add_option("--samples", v_samples, "Triangles per geometry");
  verify->add_option("--seed", v_seed, "Seed (overridden by NONEUCLID_SEED)");
  verify->add_option("--tol", v_tol, "Tolerance on normalized residuals");
  verify->add_option("--family", v_family)->check(CLI::IsMember(family_names));
  verify->add_option("--family-param", v_param, "Family parameter (see README)");
  verify->add_option("--spread", v_spread, "Vertex spread cap for the uniform family");
  verify->add_option("--format", v_format)->check(CLI::IsMember({"text", "json", "csv"}));
  verify->add_option("--output", v_output, "Write the report here instead of stdout");
  verify->add_option("--threads", v_threads, "Worker threads")->check(CLI::Range(1u, 256u));

  // triangle
  auto* triangle = app.add_subcommand("triangle", "Report centers and identities for one triangle");
  std::string t_geometry;
  std::string t_model;
  std::string t_format = "text";
  std::vector<std::string> t_vertices;
  triangle->add_option("--geometry", t_geometry)->required()->check(CLI::IsMember(geometry_names));
  triangle->add_option("--model", t_model, "xy | latlon, vector | disk, vector");
  triangle->add_option("--format", t_format)->check(CLI::IsMember({"text", "json"}));
  triangle->add_option("vertices", t_vertices, "Three vertices, comma separated coordinates")->expected(3)->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Tabulate R, r, d and identities along a family parameter");
  std::string s_family;
  std::string s_range;
  std::string s_geometry;
  std::string s_output;
  std::string s_spacing = "linear";
  sweep->add_option("--family", s_family)->required()->check(
      CLI::IsMember({"equilateral", "needle", "great_circle", "flat_scaled"}));
  sweep->add_option("--range", s_range, "start:stop:steps")->required();
  sweep->add_option("--geometry", s_geometry)->required()->check(CLI::IsMember(geometry_names));
  sweep->add_option("--output", s_output, "CSV path (stdout when omitted)");
  sweep->add_option("--spacing", s_spacing)->check(CLI::IsMember({"linear", "log"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      if (v_samples < 1) throw UsageError("--samples must be at least 1");
      VerifyOptions options;
      if (v_geometry != "all") options.geometries = {*parse_geometry(v_geometry)};
      options.samples = static_cast<std::size_t>(v_samples);
      options.seed = v_seed;
      if (const char* env = std::getenv(kSeedEnv); env != nullptr) options.seed = parse_seed(env);
      if (!(v_tol > 0.0)) throw UsageError("--tol must be positive");
      options.tolerance = v_tol;
      options.family = *parse_family(v_family);
      options.family_parameter = v_param;
      options.spread = v_spread;
      options.threads = v_threads;
      if (options.family == Family::great_circle &&
          (options.geometries.size() != 1 || options.geometries[0] != Geometry::spherical)) {
        throw UsageError("--family great_circle needs --geometry spherical");
      }
      for (Geometry g : options.geometries) {
        try {
          validate(sample_config_for(options, g));
        } catch (const GeometryError& e) {
          throw UsageError(e.what());
        }
      }
      const RunReport report = run_verification(options);
      const int written = emit(render(report, parse_format(v_format)), v_output, out, err);
      if (written != kExitOk) return written;
      return report.passed() ? kExitOk : kExitVerificationFailed;
    }

    if (triangle->parsed()) {
      const Geometry g = *parse_geometry(t_geometry);
      const json report = build_triangle_report(g, t_model.empty() ? default_model(g) : t_model, t_vertices);
      out << (t_format == "json" ? report.dump(2) + "\n" : triangle_text(report));
      return kExitOk;
    }

    if (sweep->parsed()) {
      const auto [start, stop, steps] = parse_range(s_range);
      const Geometry g = *parse_geometry(s_geometry);
      const Family f = *parse_family(s_family);
      if (f == Family::great_circle && g != Geometry::spherical) {
        throw UsageError("--family great_circle needs --geometry spherical");
      }
      std::vector<SweepRow> rows;
      try {
        rows = run_sweep(g, f, sweep_parameters(start, stop, steps, s_spacing == "log"));
      } catch (const GeometryError& e) {
        throw UsageError(e.what());
      }
      return emit(render_sweep_csv(rows), s_output, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::SamplingExhausted:
        return kExitSamplingExhausted;
      case ErrorKind::IdealCircumcenter:
        err << "The vertices lie on a horocycle or hypercycle, so the triangle has no circumscribed circle.\n";
        return kExitIdealCircumcenter;
      default:
        return kExitUsage;
    }
  }
  return kExitUsage;
}

}  // namespace noneuclid::cli
