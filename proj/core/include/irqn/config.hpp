#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace irqn {

/// Scalars and caps shared by the IRQN and INM solvers.
///
/// Defaults reproduce the published experimental setup. The inexactness level
/// actually used at iteration k is `rho_at(k) = max(rho0 * rho_decay^k,
/// rho_min)`; with rho0 = 0 the floor rho_min is what makes the subproblem
/// acceptance test reachable in floating point.
struct SolverConfig {
  double alpha = 0.01;     // merit / residual scaling
  double eta = 0.3;        // hyperplane acceptance, in (0,1)
  double lambda_ = 0.5;    // line-search sufficient decrease, in (0,1)
  double beta = 0.7;       // line-search backtracking factor, in (0,1)
  double gamma = 0.5;      // unit-step merit reduction, in (0,1)
  double h = 1e-5;         // cautious BFGS threshold coefficient
  double r_exp = 1.0;      // cautious BFGS threshold exponent on mu_k
  double tol = 1e-5;       // stop when alpha * |x - H(x)| <= tol
  double mu_scale = 0.01;  // mu_k = mu_scale * |x_k - H_alpha(x_k)|
  double rho0 = 0.0;
  double rho_decay = 0.5;
  double rho_min = 1e-8;
  int max_iter = 2000;
  int max_linesearch = 60;
  double inner_tol_abs = 1e-10;
  int inner_max_iter = 10000;

  double rho_at(int k) const;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Every violated constraint, one message each. Empty means valid.
std::vector<std::string> validate_config(const SolverConfig& cfg);

/// Flat `key=value` lines, one per field, shortest round-trip formatting.
std::string to_key_value(const SolverConfig& cfg);

/// Applies `key=value` lines on top of `base`. Blank lines and `#` comments
/// are ignored; unknown keys and malformed values throw ParseError.
SolverConfig parse_key_value(std::string_view text, SolverConfig base = {});

SolverConfig load_config(const std::filesystem::path& path, SolverConfig base = {});

}  // namespace irqn
