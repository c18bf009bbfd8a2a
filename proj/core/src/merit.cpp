#include "irqn/merit.hpp"

#include <fmt/format.h>

namespace irqn {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidConfig, fmt::format("alpha={} must be positive", alpha));
}

MeritEval evaluate(const VIProblem& problem, const Vector& x, double alpha) {
  require_alpha(alpha);
  Projector proj(problem.set);
  return evaluate_merit(x, problem.F(x), alpha, proj);
}

}  // namespace

MeritEval evaluate_merit(const Vector& x, const Vector& fx, double alpha, Projector& project) {
  require_alpha(alpha);
  MeritEval out;
  out.h_point = project(x - fx / alpha);
  const Vector d = out.h_point - x;
  out.distance = d.norm();
  out.residual = alpha * out.distance;
  out.gap = -fx.dot(d) - 0.5 * alpha * d.squaredNorm();
  return out;
}

Vector h_alpha(const VIProblem& problem, const Vector& x, double alpha) {
  return evaluate(problem, x, alpha).h_point;
}

double f_alpha(const VIProblem& problem, const Vector& x, double alpha) {
  return evaluate(problem, x, alpha).gap;
}

double natural_residual(const VIProblem& problem, const Vector& x, double alpha) {
  return evaluate(problem, x, alpha).residual;
}

}  // namespace irqn
