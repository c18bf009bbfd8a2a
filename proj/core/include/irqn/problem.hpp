#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "irqn/common.hpp"
#include "irqn/feasible_set.hpp"

namespace irqn {

using Mapping = std::function<Vector(const Vector&)>;
using JacobianMapping = std::function<Matrix(const Vector&)>;

struct InitialPoint {
  std::string label;
  Vector x;
};

/// VIP(F, C): find x* in C with <F(x*), x - x*> >= 0 for all x in C.
struct VIProblem {
  std::string label;
  Index dim = 0;
  Mapping eval_f;
  JacobianMapping jacobian;  // empty when no analytic Jacobian is coded
  FeasibleSet set = FeasibleSet::whole_space(0);
  /// Exact solutions, each verified at registration.
  std::vector<Vector> known_solutions;
  /// Published solution given only to a few digits; compared with
  /// `reference_tolerance` componentwise, never used as an exact solution.
  std::optional<Vector> reference_solution;
  double reference_tolerance = 0.0;
  std::vector<InitialPoint> initial_points;
  bool monotone = true;  // F is monotone on C (for Fejer checks)
  bool repaired = false;  // built with a documented correction of the source data
  std::string notes;

  /// F(x) with dimension and finiteness checks.
  Vector F(const Vector& x) const;
  bool has_jacobian() const { return static_cast<bool>(jacobian); }
  const InitialPoint& initial_point(const std::string& label) const;
};

/// Throws unless every known solution has natural residual <= `tol`
/// at the given alpha.
void verify_known_solutions(const VIProblem& problem, double alpha = 0.01, double tol = 1e-8);

}  // namespace irqn
