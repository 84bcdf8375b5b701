#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace noneuclid {

enum class ErrorKind {
  InvalidPoint,
  InvalidTriangle,
  DegenerateSide,
  IdealCircumcenter,
  UnrealizablePair,
  NegativeDiscriminant,
  SingularDenominator,
  SamplingExhausted,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind) noexcept;

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace noneuclid
