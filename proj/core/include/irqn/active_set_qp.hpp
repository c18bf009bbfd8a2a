#pragma once

#include <span>
#include <vector>

#include "irqn/common.hpp"

namespace irqn {

/// Largest row count / dimension accepted by the dense projection QP.
inline constexpr Index kDenseLimit = 512;

/// Multipliers and residuals attesting that a point is the Euclidean
/// projection onto {y : A y <= b, lower <= y <= upper}.
struct QpCertificate {
  Vector multipliers;        // one per row of A, >= 0
  Vector lower_multipliers;  // y >= lower
  Vector upper_multipliers;  // y <= upper
  std::vector<int> active_set;
  double kkt_residual = 0.0;            // |y - x + G^T lambda|_inf
  double complementarity_residual = 0.0;  // max_i lambda_i |g_i^T y - h_i|
  double primal_residual = 0.0;         // max constraint violation
  int iterations = 0;

  bool accepted(double tol = 1e-8) const {
    return kkt_residual <= tol && complementarity_residual <= tol;
  }
};

struct PolyhedralProjection {
  Vector point;
  QpCertificate certificate;
};

/// Projection onto {y : A y <= b, lower <= y <= upper} by a dual active-set
/// (Goldfarb-Idnani) method specialised to the identity Hessian.
///
/// Constraints live in a stacked index space used by `active_set` and warm
/// starts: ids [0, m) are rows of A, m + j is the bound y_j >= lower_j and
/// m + n + j the bound y_j <= upper_j. Infinite bounds are never present.
/// Entering constraints are chosen by smallest violated id (Bland's rule).
class ProjectionQp {
 public:
  ProjectionQp(Matrix A, Vector b, Vector lower, Vector upper);

  /// `warm_active` is a previous result's active set; it is used only when it
  /// yields nonnegative multipliers, otherwise the solve starts cold.
  PolyhedralProjection solve(const Vector& x, std::span<const int> warm_active = {}) const;

  Index dim() const { return n_; }
  Index num_rows() const { return A_.rows(); }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  /// Largest violation of any constraint at y (0 when feasible).
  double max_violation(const Vector& y) const;

 private:
  double row_dot(int id, const Vector& y) const;
  double rhs(int id) const;
  Vector dense_row(int id) const;
  Matrix active_rows(const std::vector<int>& active) const;
  bool try_warm_start(const Vector& x, std::span<const int> warm, Vector& y,
                      std::vector<int>& active, std::vector<double>& lambda) const;
  QpCertificate certify(const Vector& x, const Vector& y, const std::vector<int>& active,
                        const std::vector<double>& lambda) const;

  Matrix A_;
  Vector b_;
  Vector lower_;
  Vector upper_;
  Index n_;
  Index m_;
  std::vector<int> rows_;  // stacked ids that exist, ascending
};

PolyhedralProjection project_polyhedron(const Matrix& A, const Vector& b, const Vector& lower,
                                        const Vector& upper, const Vector& x);

}  // namespace irqn
