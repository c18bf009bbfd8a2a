#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "irqn/qn_update.hpp"
#include "oracles.hpp"

using irqn::Matrix;
using irqn::QnOutcome;
using irqn::QnState;
using irqn::Vector;

namespace {

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

double min_eig(const Matrix& B) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(B, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

}  // namespace

TEST(CautiousBfgs, HandExample) {
  QnState st = QnState::identity(2);
  EXPECT_EQ(irqn::cautious_bfgs_update(st, v2(1, 0), v2(2, 0), 1e-5, 0.1, 1.0), QnOutcome::Updated);
  EXPECT_EQ(st.B, (Matrix(2, 2) << 2, 0, 0, 1).finished());
  EXPECT_EQ(st.update_count, 1);
  EXPECT_EQ(st.skip_count, 0);
}

TEST(CautiousBfgs, JustBelowThresholdSkips) {
  QnState st = QnState::identity(2);
  const double h = 1e-5, mu = 0.1;
  const double threshold = h * std::pow(mu, 1.0);
  const Matrix before = st.B;
  const auto out = irqn::cautious_bfgs_update(st, v2(1, 0), v2(threshold - 1e-12, 3), h, mu, 1.0);
  EXPECT_EQ(out, QnOutcome::SkippedCondition);
  EXPECT_EQ(st.skip_count, 1);
  EXPECT_EQ(st.update_count, 0);
  EXPECT_TRUE((st.B.array() == before.array()).all());
}

TEST(CautiousBfgs, ExponentEntersThreshold) {
  // y's / |s|^2 = 1e-4: passes h mu^2 = 1e-5 * 4 but fails h mu^1 with mu = 20.
  QnState a = QnState::identity(1), b = QnState::identity(1);
  const Vector s = Vector::Ones(1), y = Vector::Constant(1, 1e-4);
  EXPECT_EQ(irqn::cautious_bfgs_update(a, s, y, 1e-5, 2.0, 2.0), QnOutcome::Updated);
  EXPECT_EQ(irqn::cautious_bfgs_update(b, s, y, 1e-5, 20.0, 1.0), QnOutcome::SkippedCondition);
}

TEST(CautiousBfgs, IdentityStepIsFixedPoint) {
  QnState st = QnState::identity(3);
  const Vector s = (Vector(3) << 0.3, -1, 2).finished();
  irqn::cautious_bfgs_update(st, s, s, 1e-5, 0.1, 1.0);
  EXPECT_LE((st.B - Matrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(CautiousBfgs, DegenerateCurvatureLeavesBUnchanged) {
  QnState st{Matrix::Zero(2, 2), 0, 0};
  EXPECT_EQ(irqn::cautious_bfgs_update(st, v2(1, 0), v2(1, 0), 1e-5, 0.1, 1.0),
            QnOutcome::SkippedDegenerate);
  EXPECT_TRUE(st.B.isZero(0.0));
  EXPECT_EQ(st.skip_count, 1);
}

TEST(CautiousBfgs, ZeroStepRejected) {
  QnState st = QnState::identity(2);
  EXPECT_THROW(irqn::cautious_bfgs_update(st, Vector::Zero(2), v2(1, 1), 1e-5, 0.1, 1.0), irqn::Error);
}

// 500 randomized updates (n <= 10) from well-conditioned positive definite B:
// positive definiteness, symmetry and the secant identity after every update,
// bit-identical B after every skip.
TEST(CautiousBfgsProperties, RandomizedUpdates) {
  std::mt19937_64 gen(500);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_int_distribution<long> dim(1, 10);
  int updated = 0, skipped = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const long n = dim(gen);
    const Matrix G = Matrix::NullaryExpr(n, n, [&] { return N(gen); });
    QnState st{G * G.transpose() / n + Matrix::Identity(n, n), 0, 0};
    const Vector s = Vector::NullaryExpr(n, [&] { return N(gen); });
    Vector y;
    if (trial % 4 == 3) {
      y = Vector::NullaryExpr(n, [&] { return N(gen); });  // curvature sign is random
    } else {
      const Matrix J = oracle::random_monotone(gen, n, 0.5);
      y = 0.5 * (J + J.transpose()) * s;
    }
    const Matrix before = st.B;
    const auto out = irqn::cautious_bfgs_update(st, s, y, 1e-5, 0.1, 1.0);
    if (out == QnOutcome::Updated) {
      ++updated;
      ASSERT_GT(y.dot(s), 0.0);
      ASSERT_LE((st.B - st.B.transpose()).norm(), 1e-12);
      ASSERT_GT(min_eig(st.B), 0.0) << "trial " << trial;
      ASSERT_LE((st.B * s - y).norm(), 1e-10 * (1.0 + y.norm())) << "trial " << trial;
    } else {
      ++skipped;
      ASSERT_TRUE((st.B.array() == before.array()).all());
    }
  }
  EXPECT_GT(updated, 350);
  EXPECT_GT(skipped, 0);
}

TEST(CautiousBfgsProperties, LongChainStaysSemidefinite) {
  std::mt19937_64 gen(501);
  std::normal_distribution<double> N(0.0, 1.0);
  const long n = 6;
  const Matrix J = oracle::random_monotone(gen, n, 0.2);
  QnState st = QnState::identity(n);
  for (int k = 0; k < 200; ++k) {
    const Vector s = Vector::NullaryExpr(n, [&] { return N(gen); });
    irqn::cautious_bfgs_update(st, s, J * s, 1e-5, 0.01, 1.0);
    ASSERT_LE((st.B - st.B.transpose()).norm(), 1e-12 * (1.0 + st.B.norm()));
    ASSERT_GE(min_eig(st.B), -1e-10);
  }
}
