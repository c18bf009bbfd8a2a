#include "irqn/problems.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "irqn/rng.hpp"

namespace irqn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Matrix tridiag(Index n, double sub, double diag, double super) {
  Matrix A = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    A(i, i) = diag;
    if (i > 0) A(i, i - 1) = sub;
    if (i + 1 < n) A(i, i + 1) = super;
  }
  return A;
}

Matrix antisymmetric(CounterRng& rng, Index n, double lo, double hi) {
  Matrix A = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      A(i, j) = rng.uniform(lo, hi);
      A(j, i) = -A(i, j);
    }
  }
  return A;
}

void add_points(VIProblem& p, std::initializer_list<Vector> points) {
  for (const Vector& x : points) p.initial_points.push_back({point_label(x), x});
}

double param(const ProblemSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

VIProblem affine(std::string label, Matrix M, Vector q, FeasibleSet set) {
  VIProblem p;
  p.label = std::move(label);
  p.dim = M.rows();
  p.eval_f = [M, q](const Vector& x) -> Vector { return M * x + q; };
  p.jacobian = [M](const Vector&) -> Matrix { return M; };
  p.set = std::move(set);
  return p;
}

VIProblem ex1(Index n) {
  VIProblem p;
  p.label = fmt::format("ex1(n={})", n);
  p.dim = n;
  p.eval_f = [](const Vector& x) -> Vector { return x - x.array().sin().matrix(); };
  p.jacobian = [](const Vector& x) -> Matrix {
    return (1.0 - x.array().cos()).matrix().asDiagonal();
  };
  p.set = FeasibleSet::whole_space(n);
  p.known_solutions = {Vector::Zero(n)};
  p.initial_points = {{"ones", Vector::Ones(n)}};
  return p;
}

VIProblem ex2(Index n) {
  const Matrix A = tridiag(n, -1.0, 2.0, -1.0);
  VIProblem p;
  p.label = fmt::format("ex2(n={})", n);
  p.dim = n;
  p.eval_f = [A](const Vector& x) -> Vector { return A * x + (x.array().exp() - 1.0).matrix(); };
  p.jacobian = [A](const Vector& x) -> Matrix {
    Matrix J = A;
    J.diagonal() += x.array().exp().matrix();
    return J;
  };
  p.set = FeasibleSet::whole_space(n);
  p.known_solutions = {Vector::Zero(n)};
  p.initial_points = {{"ones", Vector::Ones(n)}};
  return p;
}

VIProblem ex3(Index n) {
  Matrix M = Matrix::Identity(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) M(i, j) = 2.0;
  }
  VIProblem p = affine(fmt::format("ex3(n={})", n), M, Vector::Constant(n, -1.0),
                       FeasibleSet::nonnegative_orthant(n));
  Vector xs = Vector::Zero(n);
  xs[n - 1] = 1.0;
  p.known_solutions = {xs};
  p.initial_points = {{"ones", Vector::Ones(n)}};
  return p;
}

VIProblem ex4(Index n, std::uint64_t seed, double rho) {
  const Ex4Data d = ex4_random_data(seed, n);
  VIProblem p;
  p.label = fmt::format("ex4(n={},seed={})", n, seed);
  p.dim = n;
  p.eval_f = [M = d.M, q = d.q, a = d.a, rho](const Vector& x) -> Vector {
    return M * x + q + rho * (a.array() * x.array().atan()).matrix();
  };
  p.jacobian = [M = d.M, a = d.a, rho](const Vector& x) -> Matrix {
    Matrix J = M;
    J.diagonal() += rho * (a.array() / (1.0 + x.array().square())).matrix();
    return J;
  };
  p.set = FeasibleSet::nonnegative_orthant(n);
  p.initial_points = {{"ones", Vector::Ones(n)}};
  return p;
}

VIProblem ex5(Index n) {
  VIProblem p = affine(fmt::format("ex5(n={})", n), tridiag(n, -1.0, 4.0, -1.0),
                       Vector::Constant(n, -1.0),
                       FeasibleSet::box(Vector::Zero(n), Vector::Ones(n)));
  p.initial_points = {{"-ones", Vector::Constant(n, -1.0)}};
  return p;
}

VIProblem ex6(Index m, std::uint64_t seed) {
  const Ex6Data d = ex6_random_data(seed, m);
  VIProblem p = affine(fmt::format("ex6(n={},seed={})", m, seed), d.M, Vector::Zero(m),
                       FeasibleSet::polyhedron(d.Q, d.b));
  // b >= 0 puts the origin in C and F(0) = 0, so x* = 0.
  p.known_solutions = {Vector::Zero(m)};
  p.initial_points = {{"ones", Vector::Ones(m)}};
  return p;
}

VIProblem ex7() {
  VIProblem p;
  p.label = "ex7";
  p.dim = 4;
  p.eval_f = [](const Vector& x) -> Vector {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    return vec({3 * x1 * x1 + 2 * x1 * x2 + 2 * x2 * x2 + x3 + 3 * x4 - 6,
                2 * x1 * x1 + x1 + x2 * x2 + 10 * x3 + 2 * x4 - 2,
                3 * x1 * x1 + x1 * x2 + 2 * x2 * x2 + 2 * x3 + 9 * x4 - 9,
                x1 * x1 + 3 * x2 * x2 + 2 * x3 + 3 * x4 - 3});
  };
  p.jacobian = [](const Vector& x) -> Matrix {
    const double x1 = x[0], x2 = x[1];
    Matrix J(4, 4);
    J << 6 * x1 + 2 * x2, 2 * x1 + 4 * x2, 1, 3,
         4 * x1 + 1, 2 * x2, 10, 2,
         6 * x1 + x2, x1 + 4 * x2, 2, 9,
         2 * x1, 6 * x2, 2, 3;
    return J;
  };
  p.set = FeasibleSet::box(Vector::Constant(4, -0.5), Vector::Constant(4, 0.5));
  p.monotone = false;
  add_points(p, {vec({5, -1, 1, 1}), vec({-1, -5, 0, -3}), vec({0.6, 4, 0, 8}),
                 vec({1, -2, 0.7, 1}), vec({1, -6, 5, 3}), vec({-1, -1, -1, -1})});
  return p;
}

VIProblem ex8() {
  VIProblem p;
  p.label = "ex8";
  p.dim = 4;
  // Third component uses +x3 (the printed -x3 contradicts both stated
  // solutions); see `notes`.
  p.eval_f = [](const Vector& x) -> Vector {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    return vec({x1 * x1 * x1 - 8, x2 - x3 + x2 * x2 * x2 + 3, x2 + x3 + 2 * x3 * x3 * x3 - 3,
                x4 - 2 * x4 * x4 * x4});
  };
  p.jacobian = [](const Vector& x) -> Matrix {
    Matrix J = Matrix::Zero(4, 4);
    J(0, 0) = 3 * x[0] * x[0];
    J(1, 1) = 1 + 3 * x[1] * x[1];
    J(1, 2) = -1;
    J(2, 1) = 1;
    J(2, 2) = 1 + 6 * x[2] * x[2];
    J(3, 3) = 1 - 6 * x[3] * x[3];
    return J;
  };
  p.set = FeasibleSet::box(Vector::Zero(4), Vector::Constant(4, 5.0));
  p.known_solutions = {vec({2, 0, 1, 0}), vec({2, 0, 1, 5})};
  p.monotone = false;
  p.repaired = true;
  p.notes = "F3 = x2 + x3 + 2 x3^3 - 3 (printed sign of x3 repaired)";
  add_points(p, {vec({1, 1, 1, 1}), vec({-1, -1, -1, -1}), vec({-6, -6, -10, -1})});
  return p;
}

VIProblem ex9() {
  VIProblem p;
  p.label = "ex9";
  p.dim = 4;
  p.eval_f = [](const Vector& x) -> Vector {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    return vec({400 * x1 * x1 * x1 + 2 * x1 - 400 * x1 * x2 - 2,
                -200 * x1 * x1 + 200.2 * x2 + 19.8 * x4 - 40,
                360 * x1 * x1 * x1 + 2 * x2 - 360 * x3 * x4 - 2,
                19.8 * x2 - 180 * x3 * x3 + 220.2 * x4 * x4 - 40});
  };
  p.jacobian = [](const Vector& x) -> Matrix {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    Matrix J(4, 4);
    J << 1200 * x1 * x1 + 2 - 400 * x2, -400 * x1, 0, 0,
         -400 * x1, 200.2, 0, 19.8,
         1080 * x1 * x1, 2, -360 * x4, -360 * x3,
         0, 19.8, -360 * x3, 440.4 * x4;
    return J;
  };
  p.set = FeasibleSet::box(Vector::Constant(4, -10.0), Vector::Constant(4, 10.0));
  p.monotone = false;
  add_points(p, {vec({3, 3, 3, 3}), vec({0, 0, 0, 0}), vec({1, 1, 1, 1})});
  return p;
}

VIProblem ex10() {
  Matrix M(5, 5);
  M << 1, 0, 0, 0, 1,
       0, 1, 0, 0, 1,
       0, 0, 1, 0, 0,
       0, 0, 1, 1, 0,
       0, 0, 0, 0, 1;  // appended row: the printed M has only four rows
  Matrix A(2, 5);
  A << 1, 1, 1, 1, 1,
       -1, -2, -3, -4, -5;
  Vector lower = Vector::Zero(5);
  lower[4] = -kInf;
  VIProblem p = affine("ex10", M, vec({-1, -1, -0.5, -0.5, -1}),
                       FeasibleSet::polyhedron(A, vec({5, -6}), lower, Vector{}));
  p.repaired = true;
  p.notes = "row (0,0,0,0,1) appended to make M 5x5";
  add_points(p, {vec({10, 0, 0, 0, 0}), vec({10, 0, 10, 0, 10}), vec({25, 0, 0, 0, 0})});
  return p;
}

VIProblem ex11(double rho) {
  Matrix M(5, 5);
  M << 0.726, -0.949, 0.266, -1.193, -0.504,
       1.645, 0.678, 0.333, -0.217, -1.443,
       -1.016, -0.225, 0.769, 0.934, 1.007,
       1.063, 0.567, -1.144, 0.550, -0.548,
       -0.259, 1.453, -1.073, 0.509, 1.026;
  const Vector q = vec({5.308, 0.008, -0.938, 1.024, -1.312});
  Matrix A(2, 5);
  A.row(0).setOnes();
  A.row(1).setConstant(-1.0);
  VIProblem p;
  p.label = fmt::format("ex11(rho={})", rho);
  p.dim = 5;
  p.eval_f = [M, q, rho](const Vector& x) -> Vector {
    return M * x + q + rho * (x.array() - 2.0).atan().matrix();
  };
  p.jacobian = [M, rho](const Vector& x) -> Matrix {
    Matrix J = M;
    J.diagonal() += rho * (1.0 / (1.0 + (x.array() - 2.0).square())).matrix();
    return J;
  };
  p.set = FeasibleSet::polyhedron(A, vec({50, -10}), Vector::Zero(5), Vector{});
  // F(2,...,2) = 2 M 1 + q = (2,...,2) and the arctan term vanishes there,
  // so x* is exact for every rho.
  p.known_solutions = {Vector::Constant(5, 2.0)};
  add_points(p, {vec({25, 0, 0, 0, 0}), vec({10, 0, 10, 0, 10}), vec({0, 2.5, 2.5, 2.5, 2.5}),
                 vec({10, 0, 0, 0, 0})});
  return p;
}

VIProblem ex12() {
  Matrix A(4, 5);
  A << 0, 0, -0.5, 0, -2,
       -2, -2, 0, -0.5, -2,
       2, 2, -4, 2, -3,
       -5, 3, -2, 0, 2;
  Matrix M(5, 5);
  M << 3, -4, -16, -15, -4,
       4, 1, -5, -10, -11,
       16, 5, 2, -11, -7,
       15, 10, 11, 3, -10,
       4, 11, 7, 10, 1;
  const Vector c = vec({0.004, 0.007, 0.005, 0.009, 0.008});
  const Vector q = vec({-15, 10, -50, -30, -25});
  VIProblem p;
  p.label = "ex12";
  p.dim = 5;
  p.eval_f = [M, c, q](const Vector& x) -> Vector {
    return M * x + (c.array() * x.array().pow(4)).matrix() + q;
  };
  p.jacobian = [M, c](const Vector& x) -> Matrix {
    Matrix J = M;
    J.diagonal() += (4.0 * c.array() * x.array().cube()).matrix();
    return J;
  };
  p.set = FeasibleSet::polyhedron(A, vec({-10, -10, 13, 18}), Vector::Zero(5), Vector{});
  p.reference_solution = vec({9.08, 4.84, 0.0, 0.0, 5.00});
  p.reference_tolerance = 5e-2;
  add_points(p, {vec({0, 0, 100, 0, 0}), vec({10, 0, 10, 0, 10}), vec({0, 2.5, 2.5, 2.5, 2.5})});
  return p;
}

}  // namespace

const std::vector<ProblemInfo>& problem_registry() {
  static const std::vector<ProblemInfo> registry{
      {"ex1", "x - sin(x) = 0 (nonlinear equation)", 100, false, false},
      {"ex2", "tridiag(-1,2,-1) x + exp(x) - 1 = 0 (nonlinear equation)", 100, false, false},
      {"ex3", "LCP with degenerate solution (0,...,0,1)", 100, false, false},
      {"ex4", "NCP rho a.atan(x) + (A^T A + B) x + q, random", 100, false, true},
      {"ex5", "box-constrained LVI, tridiag(-1,4,-1)", 100, false, false},
      {"ex6", "polyhedral LVI F = (Z Z^T + S + D) x, random", 5, false, true},
      {"ex7", "Kojima-Shindo on [-0.5,0.5]^4", 4, true, false},
      {"ex8", "degenerate NCP-type problem on [0,5]^4", 4, true, false},
      {"ex9", "polynomial VI on [-10,10]^4", 4, true, false},
      {"ex10", "LVI over {sum x <= n, sum i x_i >= n+1}", 5, true, false},
      {"ex11", "nonlinear VI over {10 <= sum x <= 50, x >= 0}", 5, true, false},
      {"ex12", "nonlinear VI over {A x <= b, x >= 0}", 5, true, false},
  };
  return registry;
}

const ProblemInfo& problem_info(const std::string& name) {
  for (const auto& info : problem_registry()) {
    if (info.name == name) return info;
  }
  throw Error(ErrorCode::UnknownProblem, fmt::format("unknown problem '{}'", name));
}

ProblemSpec resolve(const ProblemSpec& spec) {
  const ProblemInfo& info = problem_info(spec.name);
  ProblemSpec out = spec;
  if (out.n == 0) out.n = info.default_n;
  if (info.fixed_dim && out.n != info.default_n) {
    throw Error(ErrorCode::BadDimension,
                fmt::format("{} has fixed dimension {}, got {}", spec.name, info.default_n, spec.n));
  }
  if (out.n < 1) throw Error(ErrorCode::BadDimension, fmt::format("dimension {} < 1", out.n));
  if (out.name == "ex6" && out.n > kDenseLimit) {
    throw Error(ErrorCode::BadDimension, fmt::format("ex6 dimension {} exceeds {}", out.n, kDenseLimit));
  }
  if (info.randomized && !out.seed) out.seed = 1;
  if (!info.randomized) out.seed.reset();
  return out;
}

VIProblem build_problem(const ProblemSpec& raw) {
  const ProblemSpec spec = resolve(raw);
  const Index n = spec.n;
  VIProblem p;
  if (spec.name == "ex1") p = ex1(n);
  else if (spec.name == "ex2") p = ex2(n);
  else if (spec.name == "ex3") p = ex3(n);
  else if (spec.name == "ex4") p = ex4(n, *spec.seed, param(spec, "rho", 1.0));
  else if (spec.name == "ex5") p = ex5(n);
  else if (spec.name == "ex6") p = ex6(n, *spec.seed);
  else if (spec.name == "ex7") p = ex7();
  else if (spec.name == "ex8") p = ex8();
  else if (spec.name == "ex9") p = ex9();
  else if (spec.name == "ex10") p = ex10();
  else if (spec.name == "ex11") p = ex11(param(spec, "rho", 1.0));
  else p = ex12();

  for (const auto& x0 : p.initial_points) require_dim(x0.x, p.dim, "initial point");
  verify_known_solutions(p);
  return p;
}

Ex4Data ex4_random_data(std::uint64_t seed, Index n) {
  CounterRng rng(seed);
  Ex4Data d;
  d.A = antisymmetric(rng, n, -5.0, 5.0);
  d.B = antisymmetric(rng, n, -5.0, 5.0);
  d.M = d.A.transpose() * d.A + d.B;
  d.q.resize(n);
  for (Index i = 0; i < n; ++i) d.q[i] = rng.uniform(-500.0, 500.0);
  d.a.resize(n);
  for (Index i = 0; i < n; ++i) d.a[i] = rng.uniform(0.0, 1.0);
  return d;
}

Ex6Data ex6_random_data(std::uint64_t seed, Index m) {
  CounterRng rng(seed);
  Ex6Data d;
  d.Z.resize(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) d.Z(i, j) = rng.uniform(-5.0, 5.0);
  }
  d.S = antisymmetric(rng, m, -5.0, 5.0);
  d.D = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) d.D(i, i) = rng.uniform(0.0, 0.3);
  d.M = d.Z * d.Z.transpose() + d.S + d.D;
  d.Q.resize(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) d.Q(i, j) = rng.uniform(0.0, 1.0);
  }
  d.b.resize(m);
  for (Index i = 0; i < m; ++i) d.b[i] = rng.uniform(0.0, 10.0);
  return d;
}

Matrix fd_jacobian(const VIProblem& problem, const Vector& x) {
  const Index n = problem.dim;
  require_dim(x, n, "Jacobian point");
  const Vector fx = problem.F(x);
  Matrix J(n, n);
  Vector xp = x;
  for (Index i = 0; i < n; ++i) {
    const double h = 1e-7 * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    J.col(i) = (problem.F(xp) - fx) / h;
    xp[i] = x[i];
  }
  return J;
}

std::string point_label(const Vector& x) {
  std::string out;
  for (Index i = 0; i < x.size(); ++i) {
    if (i > 0) out += ';';
    out += fmt::format("{}", x[i]);
  }
  return out;
}

}  // namespace irqn
