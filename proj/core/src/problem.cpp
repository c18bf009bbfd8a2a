#include "irqn/problem.hpp"

#include <fmt/format.h>

#include "irqn/merit.hpp"

namespace irqn {

Vector VIProblem::F(const Vector& x) const {
  require_dim(x, dim, "F argument");
  Vector fx = eval_f(x);
  if (fx.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{}: F returned length {}, expected {}", label, fx.size(), dim));
  }
  if (!fx.allFinite()) {
    throw Error(ErrorCode::NonFiniteEvaluation, fmt::format("{}: F(x) is not finite", label));
  }
  return fx;
}

const InitialPoint& VIProblem::initial_point(const std::string& which) const {
  for (const auto& p : initial_points) {
    if (p.label == which) return p;
  }
  throw Error(ErrorCode::UnknownInitialPoint,
              fmt::format("{} has no initial point '{}'", label, which));
}

void verify_known_solutions(const VIProblem& problem, double alpha, double tol) {
  for (const Vector& xs : problem.known_solutions) {
    const double res = natural_residual(problem, xs, alpha);
    if (!(res <= tol)) {
      throw Error(ErrorCode::InvalidConfig,
                  fmt::format("{}: known solution has natural residual {:.3e} > {:.1e}",
                              problem.label, res, tol));
    }
  }
}

}  // namespace irqn
