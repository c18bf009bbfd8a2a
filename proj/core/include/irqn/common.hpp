#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace irqn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class ErrorCode {
  DimensionMismatch,
  TooLarge,
  InfeasibleSet,
  CycleLimitExceeded,
  InnerMaxIterExceeded,
  SingularSystem,
  LineSearchExhausted,
  ZeroNormal,
  JacobianUnavailable,
  NonFiniteEvaluation,
  UnknownProblem,
  BadDimension,
  UnknownInitialPoint,
  InvalidConfig,
  ParseError,
  KeyMismatch,
};

const char* to_string(ErrorCode code);

/// All library failures surface as this exception; `code()` identifies the
/// failure class so callers (the solvers, the bench harness) can map it to a
/// status instead of aborting.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

void require_dim(const Vector& v, Index n, const char* what);

bool all_finite(const Vector& v);

}  // namespace irqn
