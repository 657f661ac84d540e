#pragma once

#include <stdexcept>
#include <string>

namespace lgm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of a map (e.g. unskew with ‖v‖ ≥ 1).
struct DomainError : Error {
  using Error::Error;
};

/// Input at a singular point of a formula (e.g. log at angle π).
struct SingularityError : Error {
  using Error::Error;
};

/// Iterative solver did not reach its tolerance.
struct SolverError : Error {
  SolverError(const std::string& what, int iterations, double residual)
      : Error(what + " (iterations " + std::to_string(iterations) +
              ", residual " + std::to_string(residual) + ")"),
        iterations(iterations),
        residual(residual) {}
  int iterations;
  double residual;
};

/// Failure inside an optimization run, tagged with the step index.
struct NumericalError : Error {
  NumericalError(const std::string& what, int step)
      : Error("step " + std::to_string(step) + ": " + what), step(step) {}
  int step;
};

/// Invalid experiment configuration; `field` names the offending entry.
struct ConfigError : Error {
  ConfigError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field(field) {}
  std::string field;
};

}  // namespace lgm
