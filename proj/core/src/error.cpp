#include "chemoreact/error.hpp"

namespace chemoreact {

ExitCode exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ConfigError*>(&e)) return ExitCode::kConfigError;
  if (dynamic_cast<const BlowUpError*>(&e)) return ExitCode::kBlowUp;
  if (dynamic_cast<const StepCollapseError*>(&e)) return ExitCode::kStepCollapse;
  if (dynamic_cast<const InvalidStateError*>(&e)) return ExitCode::kInvalidState;
  if (dynamic_cast<const HypothesisMismatchError*>(&e)) return ExitCode::kHypothesisMismatch;
  if (dynamic_cast<const InsufficientDataError*>(&e) ||
      dynamic_cast<const DegenerateWindowError*>(&e)) {
    return ExitCode::kInsufficientData;
  }
  return ExitCode::kFailure;
}

}  // namespace chemoreact
