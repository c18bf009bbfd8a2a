#include "irqn/common.hpp"

#include <fmt/format.h>

namespace irqn {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InfeasibleSet: return "InfeasibleSet";
    case ErrorCode::CycleLimitExceeded: return "CycleLimitExceeded";
    case ErrorCode::InnerMaxIterExceeded: return "InnerMaxIterExceeded";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::LineSearchExhausted: return "LineSearchExhausted";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::JacobianUnavailable: return "JacobianUnavailable";
    case ErrorCode::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorCode::UnknownProblem: return "UnknownProblem";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::UnknownInitialPoint: return "UnknownInitialPoint";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), message)), code_(code) {}

void require_dim(const Vector& v, Index n, const char* what) {
  if (v.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{} has length {}, expected {}", what, v.size(), n));
  }
}

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace irqn
