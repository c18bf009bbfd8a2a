#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "irqn/config.hpp"
#include "irqn/common.hpp"

using irqn::SolverConfig;

namespace {

bool has_message(const std::vector<std::string>& errors, const std::string& msg) {
  return std::find(errors.begin(), errors.end(), msg) != errors.end();
}

}  // namespace

TEST(SolverConfig, DefaultsMatchPublishedSettings) {
  const SolverConfig cfg;
  EXPECT_EQ(cfg.alpha, 0.01);
  EXPECT_EQ(cfg.eta, 0.3);
  EXPECT_EQ(cfg.lambda_, 0.5);
  EXPECT_EQ(cfg.beta, 0.7);
  EXPECT_EQ(cfg.gamma, 0.5);
  EXPECT_EQ(cfg.h, 1e-5);
  EXPECT_EQ(cfg.rho0, 0.0);
  EXPECT_EQ(cfg.mu_scale, 0.01);
  EXPECT_EQ(cfg.tol, 1e-5);
  EXPECT_EQ(cfg.max_iter, 2000);
  EXPECT_EQ(cfg.max_linesearch, 60);
  EXPECT_EQ(cfg.inner_tol_abs, 1e-10);
  EXPECT_EQ(cfg.inner_max_iter, 10000);
}

TEST(SolverConfig, DefaultIsValid) { EXPECT_TRUE(irqn::validate_config(SolverConfig{}).empty()); }

TEST(SolverConfig, GammaOneRejected) {
  SolverConfig cfg;
  cfg.gamma = 1.0;
  EXPECT_TRUE(has_message(irqn::validate_config(cfg), "gamma must lie in (0,1)"));
}

TEST(SolverConfig, BetaZeroRejected) {
  SolverConfig cfg;
  cfg.beta = 0.0;
  EXPECT_TRUE(has_message(irqn::validate_config(cfg), "beta must lie in (0,1)"));
}

TEST(SolverConfig, ReportsEveryViolation) {
  SolverConfig cfg;
  cfg.eta = 1.0;
  cfg.lambda_ = -0.1;
  cfg.alpha = 0.0;
  cfg.max_iter = 0;
  cfg.tol = -1.0;
  EXPECT_GE(irqn::validate_config(cfg).size(), 5u);
}

TEST(SolverConfig, RhoScheduleHasFloor) {
  SolverConfig cfg;
  EXPECT_EQ(cfg.rho_at(0), 1e-8);
  EXPECT_EQ(cfg.rho_at(50), 1e-8);
  cfg.rho0 = 0.5;
  EXPECT_EQ(cfg.rho_at(0), 0.5);
  EXPECT_EQ(cfg.rho_at(1), 0.25);
  EXPECT_EQ(cfg.rho_at(200), 1e-8);
}

TEST(SolverConfig, KeyValueRoundTripIsBitExact) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> U(1e-9, 1.0);
  std::uniform_int_distribution<int> I(1, 1 << 20);
  for (int trial = 0; trial < 200; ++trial) {
    SolverConfig cfg;
    cfg.alpha = U(gen) * 100;
    cfg.eta = U(gen);
    cfg.lambda_ = U(gen);
    cfg.beta = U(gen);
    cfg.gamma = U(gen);
    cfg.h = U(gen) * 1e-3;
    cfg.r_exp = U(gen) * 3;
    cfg.tol = U(gen) * 1e-4;
    cfg.mu_scale = U(gen);
    cfg.rho0 = U(gen) / 3;
    cfg.rho_decay = U(gen);
    cfg.rho_min = U(gen) * 1e-6;
    cfg.max_iter = I(gen);
    cfg.max_linesearch = I(gen);
    cfg.inner_tol_abs = U(gen) * 1e-8;
    cfg.inner_max_iter = I(gen);
    const SolverConfig back = irqn::parse_key_value(irqn::to_key_value(cfg));
    ASSERT_EQ(back, cfg) << irqn::to_key_value(cfg);
  }
}

TEST(SolverConfig, ParsesCommentsAndOverlaysBase) {
  SolverConfig base;
  base.max_iter = 77;
  const auto cfg = irqn::parse_key_value("# tuned\n\ngamma = 0.25\n  tol=1e-7  \n", base);
  EXPECT_EQ(cfg.gamma, 0.25);
  EXPECT_EQ(cfg.tol, 1e-7);
  EXPECT_EQ(cfg.max_iter, 77);
}

TEST(SolverConfig, UnknownKeyIsParseError) {
  try {
    irqn::parse_key_value("gama=0.5\n");
    FAIL() << "expected ParseError";
  } catch (const irqn::Error& e) {
    EXPECT_EQ(e.code(), irqn::ErrorCode::ParseError);
  }
}

TEST(SolverConfig, MalformedValuesAreParseErrors) {
  for (const char* text : {"gamma=abc\n", "max_iter=1.5\n", "tol\n", "alpha=0.1x\n"}) {
    EXPECT_THROW(irqn::parse_key_value(text), irqn::Error) << text;
  }
}

TEST(SolverConfig, LoadsFromFile) {
  const std::string path = testing::TempDir() + "irqn_cfg.txt";
  {
    std::ofstream out(path);
    out << "max_iter=12\nbeta=0.5\n";
  }
  const auto cfg = irqn::load_config(path);
  EXPECT_EQ(cfg.max_iter, 12);
  EXPECT_EQ(cfg.beta, 0.5);
  std::remove(path.c_str());
  EXPECT_THROW(irqn::load_config(path), irqn::Error);
}
