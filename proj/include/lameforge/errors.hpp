#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lameforge {

enum class ErrorCode {
  InvalidArgument,
  DivisionByZeroPolynomial,
  RootNonConvergence,
  InconsistentRoots,
  PoleClustering,
  LogTerm,
  NotASolution,
  DegreeViolation,
  NoConsistentRho,
  PoleHit,
  ArrangementHit,
  NonConvergence,
  StepIntoArrangement,
  NotRealAxisProblem,
  ComplexDataUnsupported,
  NotCritical,
  NotFuchs0,
  RecurrenceBreakdown,
  PochhammerPole,
  NonMonomialConstraint,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Input errors (bad arguments, parse failures) map to CLI exit code 2,
/// everything else is a numeric failure (exit code 1).
bool is_input_error(ErrorCode code);

/// "1.23e-07", for numbers quoted in messages.
std::string format_sci(double v);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lameforge
