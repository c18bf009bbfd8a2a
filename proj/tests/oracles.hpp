// Independent reference computations used by the tests. Everything here is
// deliberately naive (enumeration, dense grids) and shares no code with the
// library beyond the Eigen types.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Plain SplitMix64 stream (state += golden gamma; output = mix(state)).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Stacked constraints G y <= h.
struct Halfspaces {
  Mat G;
  Vec h;
};

inline Halfspaces stack(const Mat& A, const Vec& b, const Vec& lower, const Vec& upper) {
  const long n = A.cols();
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (long i = 0; i < A.rows(); ++i) {
    rows.push_back(A.row(i));
    rhs.push_back(b[i]);
  }
  for (long j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j])) continue;
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(n);
    r[j] = -1.0;
    rows.push_back(r);
    rhs.push_back(-lower[j]);
  }
  for (long j = 0; j < upper.size(); ++j) {
    if (!std::isfinite(upper[j])) continue;
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(n);
    r[j] = 1.0;
    rows.push_back(r);
    rhs.push_back(upper[j]);
  }
  Halfspaces out{Mat(rows.size(), n), Vec(rhs.size())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.G.row(i) = rows[i];
    out.h[i] = rhs[i];
  }
  return out;
}

/// Projection onto {G y <= h} by enumerating every candidate active set:
/// solve the equality-constrained least-squares problem, keep the candidate
/// that is primal feasible with nonnegative multipliers. Exponential; for
/// tiny instances only.
inline std::optional<Vec> brute_force_projection(const Halfspaces& c, const Vec& x, double tol = 1e-9) {
  const long m = c.G.rows();
  const long n = c.G.cols();
  std::optional<Vec> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<long> act;
    for (long i = 0; i < m; ++i)
      if (mask >> i & 1) act.push_back(i);
    if (static_cast<long>(act.size()) > n) continue;
    Mat Ga(act.size(), n);
    Vec ha(act.size());
    for (std::size_t k = 0; k < act.size(); ++k) {
      Ga.row(k) = c.G.row(act[k]);
      ha[k] = c.h[act[k]];
    }
    Vec y = x;
    if (!act.empty()) {
      const Mat K = Ga * Ga.transpose();
      Eigen::FullPivLU<Mat> lu(K);
      if (lu.rank() < static_cast<long>(act.size())) continue;
      const Vec lambda = lu.solve(Ga * x - ha);
      if ((lambda.array() < -tol).any()) continue;
      y = x - Ga.transpose() * lambda;
    }
    if (((c.G * y - c.h).array() > tol * (1.0 + c.h.cwiseAbs().maxCoeff())).any()) continue;
    const double d = (y - x).norm();
    if (d < best_dist) {
      best_dist = d;
      best = y;
    }
  }
  return best;
}

/// Solves the LCP  z >= 0, w = q + M z >= 0, z'w = 0  by enumerating the
/// support of z. Returns every solution found (unique for P-matrices).
inline std::vector<Vec> brute_force_lcp(const Mat& M, const Vec& q, double tol = 1e-10) {
  const long n = q.size();
  std::vector<Vec> sols;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<long> s;
    for (long i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    Vec z = Vec::Zero(n);
    if (!s.empty()) {
      Mat Mss(s.size(), s.size());
      Vec qs(s.size());
      for (std::size_t a = 0; a < s.size(); ++a) {
        qs[a] = q[s[a]];
        for (std::size_t b = 0; b < s.size(); ++b) Mss(a, b) = M(s[a], s[b]);
      }
      Eigen::FullPivLU<Mat> lu(Mss);
      if (!lu.isInvertible()) continue;
      const Vec zs = lu.solve(-qs);
      for (std::size_t a = 0; a < s.size(); ++a) z[s[a]] = zs[a];
    }
    const Vec w = q + M * z;
    if ((z.array() < -tol).any() || (w.array() < -tol).any()) continue;
    if (std::abs(z.dot(w)) > tol * (1.0 + z.norm() * w.norm())) continue;
    sols.push_back(z);
  }
  return sols;
}

/// max over a dense grid of the box [lo, hi] (dimension <= 3) of
/// -<f, y - x> - (alpha/2)|y - x|^2.
inline double grid_gap(const Vec& x, const Vec& f, double alpha, const Vec& lo, const Vec& hi,
                       int points = 401) {
  const long n = x.size();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> idx(n, 0);
  for (;;) {
    Vec y(n);
    for (long j = 0; j < n; ++j) y[j] = lo[j] + (hi[j] - lo[j]) * idx[j] / (points - 1);
    best = std::max(best, -f.dot(y - x) - 0.5 * alpha * (y - x).squaredNorm());
    long j = 0;
    while (j < n && ++idx[j] == points) idx[j++] = 0;
    if (j == n) break;
  }
  return best;
}

/// Random strictly monotone matrix: Z Z' + S + c I with S antisymmetric.
inline Mat random_monotone(std::mt19937_64& gen, long n, double shift) {
  std::normal_distribution<double> N(0.0, 1.0);
  Mat Z(n, n), S(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Z(i, j) = N(gen);
      S(i, j) = N(gen);
    }
  return Z * Z.transpose() / n + (S - S.transpose()) / 2.0 + shift * Mat::Identity(n, n);
}

}  // namespace oracle
