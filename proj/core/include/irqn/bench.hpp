#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "irqn/config.hpp"
#include "irqn/problems.hpp"
#include "irqn/solvers.hpp"

namespace irqn::bench {

enum class SolverChoice { Irqn, Inm, Both };

SolverChoice parse_solver_choice(const std::string& text);

/// One problem instance and the initial points to run it from
/// (empty means every declared initial point).
struct RunItem {
  ProblemSpec spec;
  std::vector<std::string> x0_labels;
};

struct RunRequest {
  std::vector<RunItem> items;
  SolverChoice solver = SolverChoice::Both;
  SolverConfig config;
  int reps = 3;  // time_s is the median over reps
  int jobs = 1;  // concurrent runs; row order is request order regardless
};

struct ResultRow {
  std::string problem;
  Index n = 0;
  std::string x0;
  std::string solver;
  int iter = 0;
  double time_s = 0.0;
  double res = 0.0;
  std::string status;
  int unit_steps = 0;
  int hyperplane_steps = 0;
  int linesearch_steps = 0;
  std::optional<std::uint64_t> seed;
  bool repaired = false;
  Vector final_x;  // not serialized

  /// Equality on every serialized field except time_s.
  bool same_outcome(const ResultRow& other) const;
};

inline constexpr const char* kCsvHeader =
    "problem,n,x0,solver,iter,time_s,res,status,unit_steps,hyperplane_steps,linesearch_steps,seed,"
    "repaired";

/// Validates the whole request up front (unknown problems, labels and bad
/// configs throw), then runs every (item, x0, solver) triple. Solver-level
/// failures become status values and never abort the batch.
std::vector<ResultRow> run(const RunRequest& request);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);
std::vector<ResultRow> read_csv_file(const std::string& path);

struct ComparedRow {
  std::string key;
  ResultRow a;
  ResultRow b;
  bool regression = false;  // b.iter > 2 * a.iter
};

struct Comparison {
  bool keyed_by_solver = true;
  std::vector<ComparedRow> rows;
  int regressions = 0;
};

/// Matches rows by (problem, n, x0, seed), plus solver when both inputs
/// cover the same solver set. Any unmatched or duplicate key throws
/// KeyMismatch naming the row.
Comparison compare(const std::vector<ResultRow>& a, const std::vector<ResultRow>& b);
std::string render(const Comparison& comparison);

/// Registry listing: names, dimensions, initial points, known solutions
/// and repair flags.
std::string render_problem_list();

}  // namespace irqn::bench
