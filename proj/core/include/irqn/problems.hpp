#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irqn/common.hpp"
#include "irqn/problem.hpp"

namespace irqn {

/// Names one instance of the test suite.
struct ProblemSpec {
  std::string name;  // ex1 ... ex12
  Index n = 0;       // 0 picks the default dimension
  std::optional<std::uint64_t> seed;  // randomized problems default to seed 1
  std::map<std::string, double> params;  // "rho" for ex4 and ex11

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

struct ProblemInfo {
  std::string name;
  std::string title;
  Index default_n;
  bool fixed_dim;
  bool randomized;
};

const std::vector<ProblemInfo>& problem_registry();
const ProblemInfo& problem_info(const std::string& name);

/// Fills in the default dimension and, for randomized problems, the default seed.
ProblemSpec resolve(const ProblemSpec& spec);

/// Builds the problem with its feasible set, initial points and known
/// solutions. Known solutions are verified (natural residual <= 1e-8 at
/// alpha = 0.01) before returning. Deterministic in (name, n, seed, params).
VIProblem build_problem(const ProblemSpec& spec);

/// Ex 4 data: M = A^T A + B with A and B antisymmetric, entries U(-5,5);
/// q ~ U(-500,500); a ~ U(0,1). Draw order: upper triangle of A (row-major),
/// upper triangle of B, q, a.
struct Ex4Data {
  Matrix A;
  Matrix B;
  Matrix M;
  Vector q;
  Vector a;
};
Ex4Data ex4_random_data(std::uint64_t seed, Index n);

/// Ex 6 data: M = Z Z^T + S + D with Z ~ U(-5,5) dense, S antisymmetric
/// U(-5,5), D diagonal U(0,0.3); Q (m x m) ~ U(0,1); b ~ U(0,10).
/// Draw order: Z (row-major), upper triangle of S, diag of D, Q, b.
struct Ex6Data {
  Matrix Z;
  Matrix S;
  Matrix D;
  Matrix M;
  Matrix Q;
  Vector b;
};
Ex6Data ex6_random_data(std::uint64_t seed, Index m);

/// Forward differences: column i = (F(x + h_i e_i) - F(x)) / h_i,
/// h_i = 1e-7 (1 + |x_i|).
Matrix fd_jacobian(const VIProblem& problem, const Vector& x);

/// "5;-1;1;1" style label for an initial point.
std::string point_label(const Vector& x);

}  // namespace irqn
