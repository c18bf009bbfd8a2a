#include "irqn/solvers.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "irqn/linvi.hpp"
#include "irqn/merit.hpp"
#include "irqn/problems.hpp"
#include "irqn/qn_update.hpp"

namespace irqn {
namespace {

enum class Method { Irqn, Inm };

// A run-level failure that ends the solve with a status rather than an error.
struct Halt {
  Status status;
  std::string message;
};

Status status_for(const Error& err) {
  switch (err.code()) {
    case ErrorCode::LineSearchExhausted: return Status::LineSearchExhausted;
    case ErrorCode::ZeroNormal: return Status::Stalled;
    case ErrorCode::NonFiniteEvaluation: return Status::NonFinite;
    default: return Status::SubproblemFailure;
  }
}

class OuterLoop {
 public:
  OuterLoop(const VIProblem& problem, const SolverConfig& cfg, Method method,
            const StepObserver& observer, InmOptions inm)
      : problem_(problem), cfg_(cfg), method_(method), observer_(observer), inm_(inm),
        project_(problem.set), mu_schedule_{cfg.mu_scale, cfg.alpha} {}

  SolveReport run(const Vector& x0) {
    if (const auto errors = validate_config(cfg_); !errors.empty()) {
      throw Error(ErrorCode::InvalidConfig, errors.front());
    }
    require_dim(x0, problem_.dim, "initial point");
    if (method_ == Method::Inm && !problem_.has_jacobian() && !inm_.allow_fd_jacobian) {
      throw Error(ErrorCode::JacobianUnavailable,
                  fmt::format("{} has no analytic Jacobian and finite differences are disabled",
                              problem_.label));
    }

    report_.solver = method_ == Method::Irqn ? "irqn" : "inm";
    const auto start = std::chrono::steady_clock::now();
    try {
      if (!x0.allFinite()) throw Error(ErrorCode::NonFiniteEvaluation, "initial point is not finite");
      iterate(x0);
    } catch (const Error& err) {
      report_.status = status_for(err);
      report_.message = err.what();
      report_.iterations = static_cast<int>(report_.history.size());
      report_.final_x = x_;
      report_.final_res = last_res_;
    }
    report_.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report_.projections = project_.count();
    report_.qn_updates = qn_ ? qn_->update_count : 0;
    report_.qn_skips = qn_ ? qn_->skip_count : 0;
    return std::move(report_);
  }

 private:
  Vector F(const Vector& x) {
    ++report_.f_evals;
    return problem_.F(x);
  }

  void finish(Status status, int k, const MeritEval& merit) {
    report_.status = status;
    report_.iterations = k;
    report_.final_x = x_;
    report_.final_res = merit.residual;
    report_.history.push_back({k, merit.residual, merit.gap, Branch::Terminal, 1.0, 0});
  }

  Matrix model_matrix(double mu) {
    const Index n = problem_.dim;
    Matrix M = method_ == Method::Irqn
                   ? qn_->B
                   : (problem_.has_jacobian() ? problem_.jacobian(x_) : fd_jacobian(problem_, x_));
    M.diagonal().array() += mu;
    if (M.rows() != n || M.cols() != n) {
      throw Error(ErrorCode::DimensionMismatch, "Jacobian has the wrong shape");
    }
    return M;
  }

  void iterate(const Vector& x0) {
    const double alpha = cfg_.alpha;
    x_ = project_(x0);
    Vector fx = F(x_);
    if (method_ == Method::Irqn) qn_ = QnState::identity(problem_.dim);

    for (int k = 0;; ++k) {
      const MeritEval mx = evaluate_merit(x_, fx, alpha, project_);
      last_res_ = mx.residual;
      if (mx.residual <= cfg_.tol) return finish(Status::Converged, k, mx);
      if (k >= cfg_.max_iter) return finish(Status::MaxIterations, k, mx);

      const double mu = mu_schedule_(mx.distance);
      const double rho_hat = cfg_.rho_at(k);

      const LinViSpec spec{model_matrix(mu), fx, x_};
      LinViResult sub;
      try {
        sub = solve_linvi(spec, project_, x_,
                          {rho_hat, mu, cfg_.inner_tol_abs, cfg_.inner_max_iter});
      } catch (const Error& err) {
        if (err.code() == ErrorCode::NonFiniteEvaluation) throw;
        report_.status = Status::SubproblemFailure;
        report_.message = err.what();
        report_.iterations = k;
        report_.final_x = x_;
        report_.final_res = mx.residual;
        return;
      }
      const Vector& z = sub.z;

      if ((z - x_).norm() <= 1e-14 * (1.0 + x_.norm())) {
        report_.message = "subproblem returned z_k = x_k";
        return finish(Status::Stalled, k, mx);
      }

      Branch branch = Branch::Hyperplane;
      double step = 1.0;
      int ls_m = -1;
      double merit_z = std::numeric_limits<double>::quiet_NaN();
      Vector x_next;
      Vector fx_next;

      // Unit step when the merit function drops by gamma. Skipped when
      // f_alpha(x_k) is not positive (inconsistent with res > tol numerically).
      if (method_ == Method::Irqn && mx.gap > 0.0) {
        Vector fz = F(z);
        const MeritEval mz = evaluate_merit(z, fz, alpha, project_);
        merit_z = mz.gap;
        if (mz.gap <= cfg_.gamma * mx.gap) {
          branch = Branch::UnitStep;
          x_next = z;
          fx_next = std::move(fz);
        }
      }

      if (branch != Branch::UnitStep) {
        // Hyperplane from the subproblem residual, or a line search.
        HyperplaneData hp;
        hp.y = z - sub.e;
        hp.v = F(hp.y) - sub.phi_z + sub.e;
        hp.eps_vec = -hp.v - mu * (hp.y - x_);
        const double gap_y = (hp.y - x_).norm();
        const bool separates = hp.eps_vec.norm() <= cfg_.eta * mu * gap_y &&
                               hp.v.dot(x_ - hp.y) > 0.0 && hp.v.norm() > 1e-14;
        if (!separates) {
          LineSearchResult ls =
              line_search(problem_, x_, z, rho_hat, cfg_.lambda_, cfg_.beta, cfg_.max_linesearch, mu);
          report_.f_evals += ls.m + 1;
          branch = Branch::LineSearchHyperplane;
          step = ls.step;
          ls_m = ls.m;
          hp.y = std::move(ls.y);
          hp.v = std::move(ls.v);
        }
        // Project onto the separating hyperplane, then onto C.
        x_next = hyperplane_step(x_, hp.y, hp.v, project_);
        fx_next = F(x_next);
      }

      report_.history.push_back({k, mx.residual, mx.gap, branch, step, sub.inner_iters});
      switch (branch) {
        case Branch::UnitStep: ++report_.branch_counts.unit_step; break;
        case Branch::Hyperplane: ++report_.branch_counts.hyperplane; break;
        case Branch::LineSearchHyperplane: ++report_.branch_counts.linesearch; break;
        case Branch::Terminal: break;
      }
      if (observer_) {
        observer_(StepEvent{k, x_, x_next, z, branch, ls_m, mu, rho_hat, mx.gap, merit_z});
      }

      // Cautious quasi-Newton update.
      if (method_ == Method::Irqn) {
        const Vector s = x_next - x_;
        if (s.squaredNorm() > 0.0) {
          cautious_bfgs_update(*qn_, s, fx_next - fx, cfg_.h, mu, cfg_.r_exp);
        }
      }
      x_ = std::move(x_next);
      fx = std::move(fx_next);
    }
  }

  const VIProblem& problem_;
  const SolverConfig& cfg_;
  Method method_;
  const StepObserver& observer_;
  InmOptions inm_;
  Projector project_;
  MuSchedule mu_schedule_;
  std::optional<QnState> qn_;
  Vector x_;
  double last_res_ = std::numeric_limits<double>::quiet_NaN();
  SolveReport report_;
};

}  // namespace

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::UnitStep: return "UnitStep";
    case Branch::Hyperplane: return "Hyperplane";
    case Branch::LineSearchHyperplane: return "LineSearchHyperplane";
    case Branch::Terminal: return "Terminal";
  }
  return "Unknown";
}

const char* to_string(Status status) {
  switch (status) {
    case Status::Converged: return "Converged";
    case Status::MaxIterations: return "MaxIterations";
    case Status::LineSearchExhausted: return "LineSearchExhausted";
    case Status::SubproblemFailure: return "SubproblemFailure";
    case Status::Stalled: return "Stalled";
    case Status::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

LineSearchResult line_search(const VIProblem& problem, const Vector& x_k, const Vector& z_k,
                             double rho_hat, double lambda, double beta, int max_linesearch,
                             double scale) {
  const Vector d = z_k - x_k;
  const double target = lambda * (1.0 - rho_hat) * scale * d.squaredNorm();
  double step = 1.0;
  for (int m = 0; m <= max_linesearch; ++m) {
    Vector y = x_k + step * d;
    Vector v = problem.F(y);
    if (-v.dot(d) >= target) return {m, step, std::move(y), std::move(v)};
    step *= beta;
  }
  throw Error(ErrorCode::LineSearchExhausted,
              fmt::format("no m <= {} satisfies the line-search condition", max_linesearch));
}

Vector hyperplane_step(const Vector& x, const Vector& y, const Vector& v, Projector& project) {
  const double vv = v.squaredNorm();
  const double offset = v.dot(x - y);
  if (!(vv > 1e-28) || !(offset > 0.0)) {
    throw Error(ErrorCode::ZeroNormal,
                fmt::format("degenerate hyperplane: |v|={:.3e}, <v,x-y>={:.3e}", std::sqrt(vv), offset));
  }
  return project(x - (offset / vv) * v);
}

Vector hyperplane_step(const Vector& x, const Vector& y, const Vector& v, const FeasibleSet& set) {
  Projector project(set);
  return hyperplane_step(x, y, v, project);
}

SolveReport irqn_solve(const VIProblem& problem, const Vector& x0, const SolverConfig& cfg,
                       const StepObserver& observer) {
  return OuterLoop(problem, cfg, Method::Irqn, observer, {}).run(x0);
}

SolveReport inm_solve(const VIProblem& problem, const Vector& x0, const SolverConfig& cfg,
                      const StepObserver& observer, InmOptions options) {
  return OuterLoop(problem, cfg, Method::Inm, observer, options).run(x0);
}

}  // namespace irqn
