#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flatgap {

// Error codes shared across modules; the CLI maps categories to exit codes.
enum class ErrorCode {
  // surface construction / validation
  NonSimplePolygon,
  MismatchedEdge,
  UnpairedEdge,
  BadConeAngle,
  BadIndex,
  SingularMatrix,
  // enumeration
  BudgetExceeded,
  NotFoundBelowCutoff,
  // gap statistics
  OneSidedSpectrum,
  TooFewAngles,
  // targets
  EmptyRegion,
  DegenerateRegion,
  // analysis
  ZeroDenominator,
  InconsistentMatrix,
  DivergentInput,
  HypothesisViolated,
  // harness
  UnknownSurface,
  ParseError,
  EvaluationError,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + " [" + module +
                           "]: " + what),
        code_(code),
        module_(std::move(module)) {}

  ErrorCode code() const { return code_; }
  const std::string& module() const { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

// One entry of a structured validation report.
struct ValidationIssue {
  ErrorCode code;
  std::string detail;
  int polygon = -1;  // -1 when not tied to a polygon
  int edge = -1;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

// Thrown by build_surface when validation fails; carries the full report.
class BuildError : public Error {
 public:
  explicit BuildError(ValidationReport report)
      : Error(report.issues.empty() ? ErrorCode::Internal
                                    : report.issues.front().code,
              "surface_core", report.to_string()),
        report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSimplePolygon: return "NonSimplePolygon";
    case ErrorCode::MismatchedEdge: return "MismatchedEdge";
    case ErrorCode::UnpairedEdge: return "UnpairedEdge";
    case ErrorCode::BadConeAngle: return "BadConeAngle";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotFoundBelowCutoff: return "NotFoundBelowCutoff";
    case ErrorCode::OneSidedSpectrum: return "OneSidedSpectrum";
    case ErrorCode::TooFewAngles: return "TooFewAngles";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InconsistentMatrix: return "InconsistentMatrix";
    case ErrorCode::DivergentInput: return "DivergentInput";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::UnknownSurface: return "UnknownSurface";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EvaluationError: return "EvaluationError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

inline std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += error_code_name(issue.code);
    if (issue.polygon >= 0) {
      out += " polygon " + std::to_string(issue.polygon);
      if (issue.edge >= 0) out += " edge " + std::to_string(issue.edge);
    }
    out += ": " + issue.detail;
  }
  return out;
}

}  // namespace flatgap
