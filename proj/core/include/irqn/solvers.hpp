#pragma once

#include <functional>
#include <string>
#include <vector>

#include "irqn/common.hpp"
#include "irqn/config.hpp"
#include "irqn/feasible_set.hpp"
#include "irqn/problem.hpp"

namespace irqn {

enum class Branch { UnitStep, Hyperplane, LineSearchHyperplane, Terminal };

enum class Status {
  Converged,
  MaxIterations,
  LineSearchExhausted,
  SubproblemFailure,
  Stalled,    // z_k == x_k above tolerance, or a degenerate hyperplane normal
  NonFinite,  // F produced inf/nan
};

const char* to_string(Branch branch);
const char* to_string(Status status);

struct IterationRecord {
  int k = 0;
  double res = 0.0;    // natural residual at x_k
  double merit = 0.0;  // f_alpha(x_k)
  Branch branch = Branch::Terminal;
  double step_size = 1.0;  // beta^m on line-search iterations, else 1
  int inner_iters = 0;
};

struct BranchCounts {
  int unit_step = 0;
  int hyperplane = 0;
  int linesearch = 0;

  int projection_steps() const { return hyperplane + linesearch; }
};

struct SolveReport {
  std::string solver;
  Status status = Status::MaxIterations;
  int iterations = 0;
  Vector final_x;
  double final_res = 0.0;
  std::vector<IterationRecord> history;
  double wall_time = 0.0;  // seconds
  BranchCounts branch_counts;
  std::string message;
  long f_evals = 0;
  long projections = 0;
  int qn_updates = 0;
  int qn_skips = 0;
};

/// mu_k = scale * |x_k - P_C(x_k - F(x_k)/alpha)|.
struct MuSchedule {
  double scale = 0.01;
  double alpha = 0.01;

  double operator()(double distance_to_h) const { return scale * distance_to_h; }
};

/// Separating-hyperplane data built from an inexact subproblem solution.
struct HyperplaneData {
  Vector y;        // z - e
  Vector v;        // F(z - e) - phi(z) + e
  Vector eps_vec;  // -v - mu (y - x)
};

/// What one outer iteration did; handed to an optional observer.
struct StepEvent {
  int k;
  const Vector& x;
  const Vector& x_next;
  const Vector& z;
  Branch branch;
  int linesearch_m;  // -1 unless branch == LineSearchHyperplane
  double mu;
  double rho_hat;
  double merit_x;
  double merit_z;  // NaN when not evaluated
};

using StepObserver = std::function<void(const StepEvent&)>;

struct LineSearchResult {
  int m = 0;
  double step = 1.0;  // beta^m
  Vector y;           // x + step (z - x)
  Vector v;           // F(y)
};

/// Smallest m in [0, max_linesearch] with
///   <F(x + beta^m (z - x)), x - z> >= lambda (1 - rho_hat) scale |z - x|^2.
/// The solvers pass scale = mu_k, which keeps the search well defined when
/// B_k + mu_k I is small (degenerate roots). Throws LineSearchExhausted.
LineSearchResult line_search(const VIProblem& problem, const Vector& x_k, const Vector& z_k,
                             double rho_hat, double lambda, double beta, int max_linesearch,
                             double scale = 1.0);

/// Projects x onto {u : <v, u - y> = 0} and then onto C. Requires |v| > 1e-14
/// and <v, x - y> > 0; otherwise throws ZeroNormal.
Vector hyperplane_step(const Vector& x, const Vector& y, const Vector& v, Projector& project);
Vector hyperplane_step(const Vector& x, const Vector& y, const Vector& v, const FeasibleSet& set);

/// Inexact regularized quasi-Newton method with merit-function unit steps
/// and hyperplane-projection globalization. x0 is projected onto C first.
SolveReport irqn_solve(const VIProblem& problem, const Vector& x0, const SolverConfig& cfg,
                       const StepObserver& observer = {});

struct InmOptions {
  bool allow_fd_jacobian = true;
};

/// Inexact Newton baseline: B_k is the Jacobian of F at x_k (analytic, or
/// forward differences) and every iteration takes the hyperplane path.
SolveReport inm_solve(const VIProblem& problem, const Vector& x0, const SolverConfig& cfg,
                      const StepObserver& observer = {}, InmOptions options = {});

}  // namespace irqn
