#include "lameforge/errors.hpp"

#include <cstdio>

namespace lameforge {

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DivisionByZeroPolynomial: return "DivisionByZeroPolynomial";
    case ErrorCode::RootNonConvergence: return "RootNonConvergence";
    case ErrorCode::InconsistentRoots: return "InconsistentRoots";
    case ErrorCode::PoleClustering: return "PoleClustering";
    case ErrorCode::LogTerm: return "LogTermError";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::NoConsistentRho: return "NoConsistentRho";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::ArrangementHit: return "ArrangementHit";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::StepIntoArrangement: return "StepIntoArrangement";
    case ErrorCode::NotRealAxisProblem: return "NotRealAxisProblem";
    case ErrorCode::ComplexDataUnsupported: return "ComplexDataUnsupported";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::NotFuchs0: return "NotFuchs0";
    case ErrorCode::RecurrenceBreakdown: return "RecurrenceBreakdown";
    case ErrorCode::PochhammerPole: return "PochhammerPole";
    case ErrorCode::NonMonomialConstraint: return "NonMonomialConstraint";
    case ErrorCode::Parse: return "ParseError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  return code == ErrorCode::InvalidArgument || code == ErrorCode::Parse;
}

}  // namespace lameforge
