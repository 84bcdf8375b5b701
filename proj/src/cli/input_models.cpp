#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "noneuclid/cli.hpp"
#include "noneuclid/error.hpp"

namespace noneuclid::cli {

std::vector<double> parse_coordinates(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view field = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size() || !std::isfinite(value)) {
      throw std::invalid_argument("cannot parse coordinate '" + std::string(field) + "' in '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

SphericalPoint spherical_from_latlon(double lat_deg, double lon_deg) {
  if (!(std::abs(lat_deg) <= 90.0) || !std::isfinite(lon_deg)) {
    throw GeometryError(ErrorKind::InvalidPoint, "latitude must lie in [-90, 90]");
  }
  const double lat = lat_deg * std::numbers::pi / 180.0;
  const double lon = lon_deg * std::numbers::pi / 180.0;
  return SphericalPoint::from_direction(
      Vec3(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)));
}

HyperbolicPoint hyperbolic_from_disk(double x, double y) {
  const double rho2 = x * x + y * y;
  if (!(rho2 < 1.0)) {
    throw GeometryError(ErrorKind::InvalidPoint, "Poincare disk coordinates must satisfy x^2 + y^2 < 1");
  }
  const double k = 1.0 / (1.0 - rho2);
  return HyperbolicPoint::from_timelike(Vec3((1.0 + rho2) * k, 2.0 * x * k, 2.0 * y * k));
}

}  // namespace noneuclid::cli
