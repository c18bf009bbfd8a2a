#pragma once

#include "irqn/common.hpp"

namespace irqn {

/// Quasi-Newton approximation B_k of the Jacobian, kept symmetric positive
/// semidefinite by the cautious update rule.
struct QnState {
  Matrix B;
  int update_count = 0;
  int skip_count = 0;

  static QnState identity(Index n) { return QnState{Matrix::Identity(n, n), 0, 0}; }
};

enum class QnOutcome {
  Updated,
  SkippedCondition,   // y^T s / |s|^2 < h mu^r
  SkippedDegenerate,  // s^T B s too small to divide by; B left unchanged
};

/// Cautious BFGS: when y^T s / |s|^2 >= h * mu^r,
///   B <- B - (B s s^T B)/(s^T B s) + (y y^T)/(y^T s),
/// otherwise B is left bit-identical.
QnOutcome cautious_bfgs_update(QnState& state, const Vector& s, const Vector& y, double h, double mu,
                               double r_exp);

}  // namespace irqn
