#pragma once

#include "irqn/common.hpp"
#include "irqn/feasible_set.hpp"

namespace irqn {

/// Affine subproblem operator phi(z) = q_base + M (z - anchor), with
/// M = B_k + mu_k I, q_base = F(x_k), anchor = x_k.
struct LinViSpec {
  Matrix M;
  Vector q_base;
  Vector anchor;
};

Vector phi(const LinViSpec& spec, const Vector& z);

struct LinViOptions {
  double rho_hat = 1e-8;        // inexactness level for the relative tests
  double mu = 1.0;              // regularization mu_k entering the tests
  double inner_tol_abs = 1e-10;  // absolute fallback on |e|
  int inner_max_iter = 10000;
};

// Direct: whole-space linear solve. ActiveSetQp: symmetric M over a
// polyhedron, solved exactly as a QP. The others are iterative.
enum class LinViMethod { Direct, ActiveSetQp, Extragradient, GaussSeidel };

struct LinViResult {
  Vector z;
  Vector e;      // z - P_C(z - phi(z))
  Vector phi_z;  // phi(z), reused by the outer hyperplane step
  int inner_iters = 0;
  bool satisfied_inexact = false;  // both relative tests held (not just the absolute fallback)
  LinViMethod method = LinViMethod::Extragradient;
};

/// True iff |e| <= rho mu |z - x| and <e, phi(z) + z - x> <= rho mu |z - x|^2.
bool check_inexact(const Vector& e, const Vector& phi_z, const Vector& z, const Vector& x,
                   double rho_hat, double mu);

/// Inexact solution of VIP(phi, C).
///
/// Whole-space sets are solved directly (M z = M anchor - q_base). Otherwise
/// an extragradient iteration with Khobotov step control runs from P_C(z0);
/// on box sets a projected Gauss-Seidel sweep takes over if extragradient
/// stalls. Stops when the relative tests hold or |e| <= inner_tol_abs.
/// Throws InnerMaxIterExceeded or SingularSystem.
LinViResult solve_linvi(const LinViSpec& spec, Projector& project, const Vector& z0,
                        const LinViOptions& options);

/// Smallest eigenvalue of (M + M^T)/2.
double symmetric_part_min_eigenvalue(const Matrix& M);

}  // namespace irqn
