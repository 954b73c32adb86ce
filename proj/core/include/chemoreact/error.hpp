#pragma once

#include <stdexcept>
#include <string>

namespace chemoreact {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (e.g. F(z) for z >= 1/e).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Density dropped below the negativity tolerance.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf appeared in the state.
class BlowUpError : public Error {
 public:
  using Error::Error;
};

/// Adaptive time step fell below 1e-12 * t_end.
class StepCollapseError : public Error {
 public:
  using Error::Error;
};

/// Centroid of a near-uniform density is not defined on the torus.
class DelocalizedStateError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class DegenerateWindowError : public Error {
 public:
  using Error::Error;
};

/// A theorem check was requested on a run that violates its hypotheses.
class HypothesisMismatchError : public Error {
 public:
  using Error::Error;
};

/// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kBlowUp = 3,
  kStepCollapse = 4,
  kInvalidState = 5,
  kHypothesisMismatch = 6,
  kInsufficientData = 7,
};

/// Maps the dynamic type of a caught exception to its exit code.
ExitCode exit_code_for(const std::exception& e) noexcept;

}  // namespace chemoreact
