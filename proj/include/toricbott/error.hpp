#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricbott {

enum class ErrorKind {
  MalformedInput,
  ComplexNotExactlyComposable,
  EmptyInput,
  NotComplete,
  NotSmooth,
  NotACone,
  DuplicateRay,
  UnknownFamily,
  UnboundedCohomologyChamber,
  HypothesisNotVerified,
  HypothesisInfeasible,
  ChartConditionFails,
  StratumHypothesisFails,
  MalformedNode,
  LeafNonzero,
  DomainError,
  Internal,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::ComplexNotExactlyComposable: return "ComplexNotExactlyComposable";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotSmooth: return "NotSmooth";
    case ErrorKind::NotACone: return "NotACone";
    case ErrorKind::DuplicateRay: return "DuplicateRay";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::UnboundedCohomologyChamber: return "UnboundedCohomologyChamber";
    case ErrorKind::HypothesisNotVerified: return "HypothesisNotVerified";
    case ErrorKind::HypothesisInfeasible: return "HypothesisInfeasible";
    case ErrorKind::ChartConditionFails: return "ChartConditionFails";
    case ErrorKind::StratumHypothesisFails: return "StratumHypothesisFails";
    case ErrorKind::MalformedNode: return "MalformedNode";
    case ErrorKind::LeafNonzero: return "LeafNonzero";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace toricbott
