#include "irqn/linvi.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

#include <fmt/format.h>

namespace irqn {
namespace {

constexpr double kKhobotovNu = 0.9;
constexpr int kStallWindow = 50;
constexpr double kStallProgress = 1e-14;

struct Residual {
  Vector phi_z;
  Vector e;
};

Residual residual_at(const LinViSpec& spec, Projector& project, const Vector& z) {
  Residual r;
  r.phi_z = phi(spec, z);
  r.e = z - project(z - r.phi_z);
  return r;
}

bool accept(const LinViSpec& spec, const Vector& z, const Residual& r, const LinViOptions& opt,
            bool* relative) {
  *relative = check_inexact(r.e, r.phi_z, z, spec.anchor, opt.rho_hat, opt.mu);
  return *relative || r.e.norm() <= opt.inner_tol_abs;
}

LinViResult finish(Vector z, Residual r, int iters, bool relative, LinViMethod method) {
  LinViResult out;
  out.z = std::move(z);
  out.e = std::move(r.e);
  out.phi_z = std::move(r.phi_z);
  out.inner_iters = iters;
  out.satisfied_inexact = relative;
  out.method = method;
  return out;
}

LinViResult solve_direct(const LinViSpec& spec, Projector& project, const LinViOptions& opt) {
  const Index n = spec.M.rows();
  const Matrix sym = 0.5 * (spec.M + spec.M.transpose());
  Eigen::LLT<Matrix> shifted(sym - 1e-14 * Matrix::Identity(n, n));
  if (shifted.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularSystem, "symmetric part of M is not positive definite");
  }
  const Vector rhs = spec.M * spec.anchor - spec.q_base;
  Vector z;
  if ((spec.M - spec.M.transpose()).norm() <= 1e-14 * (1.0 + spec.M.norm())) {
    z = Eigen::LLT<Matrix>(sym).solve(rhs);
  } else {
    z = spec.M.partialPivLu().solve(rhs);
  }
  Residual r = residual_at(spec, project, z);
  bool relative = false;
  accept(spec, z, r, opt, &relative);
  return finish(std::move(z), std::move(r), 1, relative, LinViMethod::Direct);
}

bool is_symmetric(const Matrix& M) {
  return (M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * (1.0 + M.cwiseAbs().maxCoeff());
}

// Symmetric positive definite M: the subproblem is min 1/2 z'Mz + c'z over C.
// With M = L L' and w = L'z this is the projection of -L^{-1}c onto the
// image polyhedron, which the dense projection QP solves exactly.
std::optional<Vector> solve_symmetric_qp(const LinViSpec& spec, const ProjectionQp& qp) {
  const Index n = spec.M.rows();
  const Eigen::LLT<Matrix> llt(spec.M);
  if (llt.info() != Eigen::Success) return std::nullopt;

  Index rows = qp.num_rows();
  for (Index j = 0; j < n; ++j) {
    rows += std::isfinite(qp.lower()[j]) ? 1 : 0;
    rows += std::isfinite(qp.upper()[j]) ? 1 : 0;
  }
  Matrix G(rows, n);
  Vector h(rows);
  G.topRows(qp.num_rows()) = qp.A();
  h.head(qp.num_rows()) = qp.b();
  Index r = qp.num_rows();
  for (Index j = 0; j < n; ++j) {
    if (std::isfinite(qp.lower()[j])) {
      G.row(r).setZero();
      G(r, j) = -1.0;
      h[r++] = -qp.lower()[j];
    }
    if (std::isfinite(qp.upper()[j])) {
      G.row(r).setZero();
      G(r, j) = 1.0;
      h[r++] = qp.upper()[j];
    }
  }
  // G z = G L^{-T} w; (G L^{-T})' = L^{-1} G'.
  const Matrix L = llt.matrixL();
  const Matrix Gw = L.triangularView<Eigen::Lower>().solve(G.transpose()).transpose();
  const Vector c = spec.q_base - spec.M * spec.anchor;
  const Vector target = -L.triangularView<Eigen::Lower>().solve(c);
  const ProjectionQp image(Gw, h, Vector{}, Vector{});
  const Vector w = image.solve(target).point;
  return Vector(L.transpose().triangularView<Eigen::Upper>().solve(w));
}

// Projected Gauss-Seidel on a box; phi is maintained incrementally.
LinViResult solve_gauss_seidel(const LinViSpec& spec, Projector& project, const Box& box, Vector z,
                               const LinViOptions& opt, int used) {
  const Index n = z.size();
  Vector phi_z = phi(spec, z);
  for (int sweep = used; sweep < opt.inner_max_iter; ++sweep) {
    for (Index i = 0; i < n; ++i) {
      const double diag = spec.M(i, i);
      if (!(diag > 0.0)) {
        throw Error(ErrorCode::SingularSystem, fmt::format("nonpositive diagonal M({0},{0})", i));
      }
      const double zi = std::clamp(z[i] - phi_z[i] / diag, box.lower[i], box.upper[i]);
      const double delta = zi - z[i];
      if (delta != 0.0) {
        z[i] = zi;
        phi_z += delta * spec.M.col(i);
      }
    }
    Residual r = residual_at(spec, project, z);
    bool relative = false;
    if (accept(spec, z, r, opt, &relative)) {
      return finish(std::move(z), std::move(r), sweep + 1, relative, LinViMethod::GaussSeidel);
    }
    phi_z = r.phi_z;  // resync against drift
  }
  throw Error(ErrorCode::InnerMaxIterExceeded,
              fmt::format("projected Gauss-Seidel did not converge in {} iterations", opt.inner_max_iter));
}

}  // namespace

Vector phi(const LinViSpec& spec, const Vector& z) {
  require_dim(z, spec.anchor.size(), "subproblem point");
  return spec.q_base + spec.M * (z - spec.anchor);
}

bool check_inexact(const Vector& e, const Vector& phi_z, const Vector& z, const Vector& x,
                   double rho_hat, double mu) {
  const double dist = (z - x).norm();
  const double bound = rho_hat * mu * dist;
  return e.norm() <= bound && e.dot(phi_z + z - x) <= bound * dist;
}

double symmetric_part_min_eigenvalue(const Matrix& M) {
  const Matrix sym = 0.5 * (M + M.transpose());
  return Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

LinViResult solve_linvi(const LinViSpec& spec, Projector& project, const Vector& z0,
                        const LinViOptions& opt) {
  const Index n = spec.anchor.size();
  if (spec.M.rows() != n || spec.M.cols() != n || spec.q_base.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "subproblem data sizes disagree");
  }
  require_dim(z0, n, "subproblem start");

  if (project.set().is_whole_space()) return solve_direct(spec, project, opt);

  Vector z = project(z0);
  Residual r = residual_at(spec, project, z);
  bool relative = false;
  if (accept(spec, z, r, opt, &relative)) {
    return finish(std::move(z), std::move(r), 0, relative, LinViMethod::Extragradient);
  }

  if (const ProjectionQp* poly = project.set().as_polyhedron(); poly && is_symmetric(spec.M)) {
    std::optional<Vector> exact;
    try {
      exact = solve_symmetric_qp(spec, *poly);
    } catch (const Error&) {
      // Fall through to the iterative path.
    }
    if (exact) {
      Vector zq = project(*exact);  // strips roundoff-level infeasibility
      Residual rq = residual_at(spec, project, zq);
      if (accept(spec, zq, rq, opt, &relative)) {
        return finish(std::move(zq), std::move(rq), 1, relative, LinViMethod::ActiveSetQp);
      }
      if (rq.e.norm() < r.e.norm()) {
        z = std::move(zq);
        r = std::move(rq);
      }
    }
  }

  const double tau_max = 1e6;
  // 1 / (1 + |M|_inf)
  double tau = 1.0 / (1.0 + spec.M.cwiseAbs().rowwise().sum().maxCoeff());

  const Box* box = project.set().as_box();
  // Stall test: the best |e| over the last kStallWindow iterations must beat
  // the best seen before that window by a relative kStallProgress.
  std::deque<double> window;
  double best_before_window = r.e.norm();

  for (int it = 1; it <= opt.inner_max_iter; ++it) {
    Vector z_bar;
    Vector phi_bar;
    double dphi = 0.0;
    double dz = 0.0;
    for (;;) {
      z_bar = project(z - tau * r.phi_z);
      phi_bar = phi(spec, z_bar);
      dphi = (r.phi_z - phi_bar).norm();
      dz = (z - z_bar).norm();
      if (tau * dphi <= kKhobotovNu * dz || dz == 0.0) break;
      tau *= 0.5;
    }
    z = project(z - tau * phi_bar);
    if (tau * dphi <= 0.5 * kKhobotovNu * dz) tau = std::min(1.5 * tau, tau_max);

    r = residual_at(spec, project, z);
    if (accept(spec, z, r, opt, &relative)) {
      return finish(std::move(z), std::move(r), it, relative, LinViMethod::Extragradient);
    }

    const double e_norm = r.e.norm();
    window.push_back(e_norm);
    if (static_cast<int>(window.size()) > kStallWindow) window.pop_front();
    if (static_cast<int>(window.size()) == kStallWindow) {
      const double window_best = *std::min_element(window.begin(), window.end());
      if (box != nullptr && window_best >= (1.0 - kStallProgress) * best_before_window) {
        return solve_gauss_seidel(spec, project, *box, std::move(z), opt, it);
      }
      best_before_window = std::min(best_before_window, window.front());
    }
  }
  throw Error(ErrorCode::InnerMaxIterExceeded,
              fmt::format("extragradient did not reach |e| <= {:.1e} in {} iterations",
                          opt.inner_tol_abs, opt.inner_max_iter));
}

}  // namespace irqn
