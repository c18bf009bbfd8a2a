#pragma once

#include "irqn/common.hpp"
#include "irqn/feasible_set.hpp"
#include "irqn/problem.hpp"

namespace irqn {

/// Regularized gap function and natural residual at one point, sharing a
/// single projection H_alpha(x) = P_C(x - F(x)/alpha).
struct MeritEval {
  Vector h_point;
  double gap = 0.0;       // f_alpha(x)
  double residual = 0.0;  // alpha * |x - H_alpha(x)|
  double distance = 0.0;  // |x - H_alpha(x)|
};

/// Core evaluator; `fx` must be F(x).
///   f_alpha(x) = -<F(x), H - x> - (alpha/2) |H - x|^2
/// which equals max_{y in C} -<F(x), y - x> - (alpha/2)|y - x|^2.
MeritEval evaluate_merit(const Vector& x, const Vector& fx, double alpha, Projector& project);

Vector h_alpha(const VIProblem& problem, const Vector& x, double alpha);
double f_alpha(const VIProblem& problem, const Vector& x, double alpha);
double natural_residual(const VIProblem& problem, const Vector& x, double alpha);

}  // namespace irqn
