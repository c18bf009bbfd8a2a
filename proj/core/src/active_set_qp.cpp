#include "irqn/active_set_qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace irqn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Thin QR of N^T (n x k) for the active rows N.
struct ActiveFactor {
  Matrix q;  // n x k, orthonormal columns
  Matrix r;  // k x k, upper triangular

  explicit ActiveFactor(const Matrix& rows) {
    const Index k = rows.rows();
    if (k == 0) return;
    Eigen::HouseholderQR<Matrix> qr(rows.transpose());
    q = qr.householderQ() * Matrix::Identity(rows.cols(), k);
    r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  }

  Index size() const { return r.rows(); }

  // Solves (N N^T) lambda = c, where N N^T = R^T R.
  Vector solve_normal(const Vector& c) const {
    const auto rt = r.transpose().triangularView<Eigen::Lower>();
    const Vector w = rt.solve(c);
    return r.triangularView<Eigen::Upper>().solve(w);
  }
};

}  // namespace

ProjectionQp::ProjectionQp(Matrix A, Vector b, Vector lower, Vector upper)
    : A_(std::move(A)), b_(std::move(b)), lower_(std::move(lower)), upper_(std::move(upper)) {
  n_ = A_.cols();
  m_ = A_.rows();
  if (n_ == 0 && lower_.size() > 0) n_ = lower_.size();
  if (b_.size() != m_) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("b has length {}, A has {} rows", b_.size(), m_));
  }
  if (lower_.size() == 0) lower_ = Vector::Constant(n_, -kInf);
  if (upper_.size() == 0) upper_ = Vector::Constant(n_, kInf);
  require_dim(lower_, n_, "lower bound");
  require_dim(upper_, n_, "upper bound");
  if (n_ > kDenseLimit || m_ > kDenseLimit) {
    throw Error(ErrorCode::TooLarge,
                fmt::format("polyhedron {}x{} exceeds dense limit {}", m_, n_, kDenseLimit));
  }
  for (Index j = 0; j < n_; ++j) {
    if (!(lower_[j] <= upper_[j])) {
      throw Error(ErrorCode::InfeasibleSet, fmt::format("lower[{}] > upper[{}]", j, j));
    }
  }
  for (Index i = 0; i < m_; ++i) rows_.push_back(static_cast<int>(i));
  for (Index j = 0; j < n_; ++j) {
    if (std::isfinite(lower_[j])) rows_.push_back(static_cast<int>(m_ + j));
  }
  for (Index j = 0; j < n_; ++j) {
    if (std::isfinite(upper_[j])) rows_.push_back(static_cast<int>(m_ + n_ + j));
  }
}

double ProjectionQp::row_dot(int id, const Vector& y) const {
  if (id < m_) return A_.row(id).dot(y);
  if (id < m_ + n_) return -y[id - m_];
  return y[id - m_ - n_];
}

double ProjectionQp::rhs(int id) const {
  if (id < m_) return b_[id];
  if (id < m_ + n_) return -lower_[id - m_];
  return upper_[id - m_ - n_];
}

Vector ProjectionQp::dense_row(int id) const {
  if (id < m_) return A_.row(id).transpose();
  Vector g = Vector::Zero(n_);
  if (id < m_ + n_) {
    g[id - m_] = -1.0;
  } else {
    g[id - m_ - n_] = 1.0;
  }
  return g;
}

Matrix ProjectionQp::active_rows(const std::vector<int>& active) const {
  Matrix rows(static_cast<Index>(active.size()), n_);
  for (std::size_t i = 0; i < active.size(); ++i) {
    rows.row(static_cast<Index>(i)) = dense_row(active[i]).transpose();
  }
  return rows;
}

double ProjectionQp::max_violation(const Vector& y) const {
  double worst = 0.0;
  for (int id : rows_) worst = std::max(worst, row_dot(id, y) - rhs(id));
  return worst;
}

bool ProjectionQp::try_warm_start(const Vector& x, std::span<const int> warm, Vector& y,
                                  std::vector<int>& active, std::vector<double>& lambda) const {
  std::vector<int> ids;
  for (int id : warm) {
    if (std::binary_search(rows_.begin(), rows_.end(), id)) ids.push_back(id);
  }
  if (ids.empty() || static_cast<Index>(ids.size()) > n_) return false;

  const Matrix rows = active_rows(ids);
  Eigen::ColPivHouseholderQR<Matrix> rank_check(rows.transpose());
  if (rank_check.rank() != static_cast<Index>(ids.size())) return false;

  const ActiveFactor factor(rows);
  Vector c(static_cast<Index>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) c[static_cast<Index>(i)] = row_dot(ids[i], x) - rhs(ids[i]);
  const Vector lam = factor.solve_normal(c);
  if (!lam.allFinite() || lam.minCoeff() < 0.0) return false;

  y = x - rows.transpose() * lam;
  active = std::move(ids);
  lambda.assign(lam.data(), lam.data() + lam.size());
  return true;
}

PolyhedralProjection ProjectionQp::solve(const Vector& x, std::span<const int> warm_active) const {
  require_dim(x, n_, "projection point");
  if (!x.allFinite()) throw Error(ErrorCode::NonFiniteEvaluation, "projection of non-finite point");

  const Index total = m_ + 2 * n_;
  Vector y = x;
  std::vector<int> active;
  std::vector<double> lambda;
  if (!warm_active.empty()) try_warm_start(x, warm_active, y, active, lambda);

  std::vector<char> is_active(static_cast<std::size_t>(total), 0);
  for (int id : active) is_active[static_cast<std::size_t>(id)] = 1;

  const auto tolerance = [&](int id) { return 1e-12 * (1.0 + std::abs(rhs(id))); };
  const int cap = 50 * static_cast<int>(rows_.size() + static_cast<std::size_t>(n_)) + 100;
  int steps = 0;

  for (;;) {
    int entering = -1;
    for (int id : rows_) {
      if (!is_active[static_cast<std::size_t>(id)] && row_dot(id, y) - rhs(id) > tolerance(id)) {
        entering = id;
        break;
      }
    }
    if (entering < 0) break;

    const Vector g = dense_row(entering);
    const double g2 = g.squaredNorm();
    double entering_lambda = 0.0;
    for (;;) {
      if (++steps > cap) {
        throw Error(ErrorCode::CycleLimitExceeded,
                    fmt::format("projection QP exceeded {} active-set changes", cap));
      }
      const Matrix rows = active_rows(active);
      const ActiveFactor factor(rows);
      const Index k = factor.size();

      Vector r(k);
      Vector z = g;
      if (k > 0) {
        const Vector qg = factor.q.transpose() * g;
        r = factor.r.triangularView<Eigen::Upper>().solve(qg);
        z -= factor.q * qg;
      }

      // Dual step: largest t keeping the active multipliers nonnegative.
      double t_dual = kInf;
      int drop = -1;
      for (Index j = 0; j < k; ++j) {
        if (r[j] <= 1e-14) continue;
        const double ratio = lambda[static_cast<std::size_t>(j)] / r[j];
        if (ratio < t_dual ||
            (ratio == t_dual && active[static_cast<std::size_t>(j)] < active[static_cast<std::size_t>(drop)])) {
          t_dual = ratio;
          drop = static_cast<int>(j);
        }
      }

      // Primal step: distance to make the entering constraint active.
      const double zz = z.squaredNorm();
      const double violation = row_dot(entering, y) - rhs(entering);
      const double t_primal = zz > 1e-14 * g2 ? violation / zz : kInf;

      if (!std::isfinite(t_dual) && !std::isfinite(t_primal)) {
        throw Error(ErrorCode::InfeasibleSet,
                    fmt::format("constraint {} cannot be satisfied together with the active set",
                                entering));
      }

      const double t = std::min(t_dual, t_primal);
      if (std::isfinite(t_primal)) y -= t * z;
      for (Index j = 0; j < k; ++j) lambda[static_cast<std::size_t>(j)] -= t * r[j];
      entering_lambda += t;

      if (t_primal <= t_dual) {
        active.push_back(entering);
        lambda.push_back(entering_lambda);
        is_active[static_cast<std::size_t>(entering)] = 1;
        break;
      }
      is_active[static_cast<std::size_t>(active[static_cast<std::size_t>(drop)])] = 0;
      active.erase(active.begin() + drop);
      lambda.erase(lambda.begin() + drop);
    }
  }

  // Polish: recompute the exact KKT point of the final active set.
  if (!active.empty()) {
    const Matrix rows = active_rows(active);
    const ActiveFactor factor(rows);
    Vector c(static_cast<Index>(active.size()));
    for (std::size_t i = 0; i < active.size(); ++i) c[static_cast<Index>(i)] = row_dot(active[i], x) - rhs(active[i]);
    const Vector lam = factor.solve_normal(c);
    if (lam.allFinite() && lam.minCoeff() >= -1e-12) {
      const Vector polished = x - rows.transpose() * lam.cwiseMax(0.0);
      if (max_violation(polished) <= std::max(max_violation(y), 1e-13)) {
        y = polished;
        for (std::size_t i = 0; i < active.size(); ++i) lambda[i] = std::max(lam[static_cast<Index>(i)], 0.0);
      }
    }
  }

  PolyhedralProjection out{y, certify(x, y, active, lambda)};
  out.certificate.iterations = steps;
  return out;
}

QpCertificate ProjectionQp::certify(const Vector& x, const Vector& y, const std::vector<int>& active,
                                    const std::vector<double>& lambda) const {
  QpCertificate cert;
  cert.multipliers = Vector::Zero(m_);
  cert.lower_multipliers = Vector::Zero(n_);
  cert.upper_multipliers = Vector::Zero(n_);
  cert.active_set = active;
  std::sort(cert.active_set.begin(), cert.active_set.end());

  Vector stationarity = y - x;
  for (std::size_t i = 0; i < active.size(); ++i) {
    const int id = active[i];
    const double lam = lambda[i];
    if (id < m_) {
      cert.multipliers[id] = lam;
      stationarity += lam * A_.row(id).transpose();
    } else if (id < m_ + n_) {
      cert.lower_multipliers[id - m_] = lam;
      stationarity[id - m_] -= lam;
    } else {
      cert.upper_multipliers[id - m_ - n_] = lam;
      stationarity[id - m_ - n_] += lam;
    }
    cert.complementarity_residual =
        std::max(cert.complementarity_residual, std::abs(lam * (row_dot(id, y) - rhs(id))));
  }
  cert.kkt_residual = stationarity.size() > 0 ? stationarity.lpNorm<Eigen::Infinity>() : 0.0;
  cert.primal_residual = max_violation(y);
  return cert;
}

PolyhedralProjection project_polyhedron(const Matrix& A, const Vector& b, const Vector& lower,
                                        const Vector& upper, const Vector& x) {
  return ProjectionQp(A, b, lower, upper).solve(x);
}

}  // namespace irqn
