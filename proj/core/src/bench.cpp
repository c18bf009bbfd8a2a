#include "irqn/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>


namespace irqn::bench {
namespace {

struct Task {
  std::size_t problem_index;
  std::string x0;
  bool irqn;
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& text, const char* what, int line_no) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ParseError,
                fmt::format("line {}: bad {} value '{}'", line_no, what, text));
  }
  return value;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ResultRow solve_one(const VIProblem& problem, const ProblemSpec& spec, const std::string& x0,
                    bool irqn, const SolverConfig& cfg, int reps) {
  ResultRow row;
  row.problem = spec.name;
  row.n = spec.n;
  row.x0 = x0;
  row.solver = irqn ? "irqn" : "inm";
  row.seed = spec.seed;
  row.repaired = problem.repaired;

  const Vector& start = problem.initial_point(x0).x;
  std::vector<double> times;
  for (int r = 0; r < std::max(reps, 1); ++r) {
    SolveReport report;
    try {
      report = irqn ? irqn_solve(problem, start, cfg) : inm_solve(problem, start, cfg);
    } catch (const Error& err) {
      row.status = to_string(err.code());
      return row;
    }
    times.push_back(report.wall_time);
    if (r == 0) {
      row.iter = report.iterations;
      row.res = report.final_res;
      row.status = to_string(report.status);
      row.unit_steps = report.branch_counts.unit_step;
      row.hyperplane_steps = report.branch_counts.hyperplane;
      row.linesearch_steps = report.branch_counts.linesearch;
      row.final_x = report.final_x;
    }
  }
  row.time_s = median(times);
  return row;
}

std::string row_key(const ResultRow& row, bool with_solver) {
  std::string key = fmt::format("{}/n={}/x0={}", row.problem, row.n, row.x0);
  if (row.seed) key += fmt::format("/seed={}", *row.seed);
  if (with_solver) key += "/" + row.solver;
  return key;
}

std::map<std::string, const ResultRow*> index_rows(const std::vector<ResultRow>& rows,
                                                   bool with_solver, const char* side) {
  std::map<std::string, const ResultRow*> index;
  for (const auto& row : rows) {
    const std::string key = row_key(row, with_solver);
    if (!index.emplace(key, &row).second) {
      throw Error(ErrorCode::KeyMismatch, fmt::format("duplicate row {} in {}", key, side));
    }
  }
  return index;
}

}  // namespace

bool ResultRow::same_outcome(const ResultRow& o) const {
  return problem == o.problem && n == o.n && x0 == o.x0 && solver == o.solver && iter == o.iter &&
         res == o.res && status == o.status && unit_steps == o.unit_steps &&
         hyperplane_steps == o.hyperplane_steps && linesearch_steps == o.linesearch_steps &&
         seed == o.seed && repaired == o.repaired;
}

SolverChoice parse_solver_choice(const std::string& text) {
  if (text == "irqn") return SolverChoice::Irqn;
  if (text == "inm") return SolverChoice::Inm;
  if (text == "both") return SolverChoice::Both;
  throw Error(ErrorCode::ParseError, fmt::format("solver must be irqn, inm or both, got '{}'", text));
}

std::vector<ResultRow> run(const RunRequest& request) {
  if (const auto errors = validate_config(request.config); !errors.empty()) {
    throw Error(ErrorCode::InvalidConfig, errors.front());
  }

  std::vector<ProblemSpec> specs;
  std::vector<VIProblem> problems;
  std::vector<Task> tasks;
  for (const auto& item : request.items) {
    specs.push_back(resolve(item.spec));
    problems.push_back(build_problem(specs.back()));
    const VIProblem& problem = problems.back();
    std::vector<std::string> labels = item.x0_labels;
    if (labels.empty()) {
      for (const auto& p : problem.initial_points) labels.push_back(p.label);
    }
    for (const auto& label : labels) {
      problem.initial_point(label);  // throws UnknownInitialPoint
      if (request.solver != SolverChoice::Inm) tasks.push_back({problems.size() - 1, label, true});
      if (request.solver != SolverChoice::Irqn) tasks.push_back({problems.size() - 1, label, false});
    }
  }

  std::vector<ResultRow> rows(tasks.size());
  auto work = [&](std::size_t i) {
    const Task& t = tasks[i];
    rows[i] = solve_one(problems[t.problem_index], specs[t.problem_index], t.x0, t.irqn,
                        request.config, request.reps);
  };

  const std::size_t jobs = std::clamp<std::size_t>(request.jobs, 1, std::max<std::size_t>(tasks.size(), 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.problem, r.n, r.x0, r.solver,
                       r.iter, r.time_s, r.res, r.status, r.unit_steps, r.hyperplane_steps,
                       r.linesearch_steps, r.seed ? std::to_string(*r.seed) : std::string(),
                       r.repaired ? "true" : "false");
  }
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, fmt::format("cannot open {} for writing", path));
  write_csv(out, rows);
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::ParseError, "missing or unexpected CSV header");
  }
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13) {
      throw Error(ErrorCode::ParseError,
                  fmt::format("line {}: expected 13 fields, got {}", line_no, f.size()));
    }
    ResultRow r;
    r.problem = f[0];
    r.n = parse_number<Index>(f[1], "n", line_no);
    r.x0 = f[2];
    r.solver = f[3];
    r.iter = parse_number<int>(f[4], "iter", line_no);
    r.time_s = parse_number<double>(f[5], "time_s", line_no);
    r.res = parse_number<double>(f[6], "res", line_no);
    r.status = f[7];
    r.unit_steps = parse_number<int>(f[8], "unit_steps", line_no);
    r.hyperplane_steps = parse_number<int>(f[9], "hyperplane_steps", line_no);
    r.linesearch_steps = parse_number<int>(f[10], "linesearch_steps", line_no);
    if (!f[11].empty()) r.seed = parse_number<std::uint64_t>(f[11], "seed", line_no);
    if (f[12] != "true" && f[12] != "false") {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: bad repaired value '{}'", line_no, f[12]));
    }
    r.repaired = f[12] == "true";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, fmt::format("cannot open {}", path));
  return read_csv(in);
}

Comparison compare(const std::vector<ResultRow>& a, const std::vector<ResultRow>& b) {
  std::set<std::string> solvers_a, solvers_b;
  for (const auto& r : a) solvers_a.insert(r.solver);
  for (const auto& r : b) solvers_b.insert(r.solver);

  Comparison out;
  out.keyed_by_solver = solvers_a == solvers_b;
  const auto index_a = index_rows(a, out.keyed_by_solver, "first file");
  const auto index_b = index_rows(b, out.keyed_by_solver, "second file");
  for (const auto& [key, row] : index_b) {
    if (!index_a.count(key)) {
      throw Error(ErrorCode::KeyMismatch, fmt::format("row {} only in second file", key));
    }
  }
  for (const auto& row : a) {
    const std::string key = row_key(row, out.keyed_by_solver);
    const auto it = index_b.find(key);
    if (it == index_b.end()) {
      throw Error(ErrorCode::KeyMismatch, fmt::format("row {} only in first file", key));
    }
    ComparedRow c{key, row, *it->second, false};
    c.regression = c.b.iter > 2 * c.a.iter;
    out.regressions += c.regression ? 1 : 0;
    out.rows.push_back(std::move(c));
  }
  return out;
}

std::string render(const Comparison& cmp) {
  std::string out = fmt::format("{:<8} {:>6} {:<22} | {:<5} {:>6} {:>9} {:>9} | {:<5} {:>6} {:>9} {:>9} |\n",
                                "problem", "n", "x0", "A", "iter", "time", "res", "B", "iter", "time", "res");
  out += std::string(out.size() - 1, '-') + '\n';
  for (const auto& c : cmp.rows) {
    out += fmt::format(
        "{:<8} {:>6} {:<22} | {:<5} {:>6} {:>9.2e} {:>9.2e} | {:<5} {:>6} {:>9.2e} {:>9.2e} | {}{}\n",
        c.a.problem, c.a.n, c.a.x0, c.a.solver, c.a.iter, c.a.time_s, c.a.res, c.b.solver, c.b.iter,
        c.b.time_s, c.b.res, c.regression ? "REGRESSION " : "",
        c.a.status == c.b.status ? "" : c.a.status + "->" + c.b.status);
  }
  out += fmt::format("{} rows, {} regressions (iter ratio > 2)\n", cmp.rows.size(), cmp.regressions);
  return out;
}

namespace {

// Long vectors are summarised: "0 (x100)" or "0;0;0;...;1 (n=100)".
std::string compact_label(const Vector& x) {
  if (x.size() <= 8) return point_label(x);
  if ((x.array() == x[0]).all()) return fmt::format("{} (x{})", x[0], x.size());
  return fmt::format("{};...;{} (n={})", point_label(x.head(3)), x[x.size() - 1], x.size());
}

}  // namespace

std::string render_problem_list() {
  std::string out;
  for (const auto& info : problem_registry()) {
    ProblemSpec spec;
    spec.name = info.name;
    const VIProblem p = build_problem(spec);
    out += fmt::format("{:<5} n={}{}  {}\n", info.name, info.default_n,
                       info.fixed_dim ? " (fixed)" : "", info.title);
    out += fmt::format("      set: {}\n", p.set.describe());
    std::string labels;
    for (const auto& x0 : p.initial_points) labels += (labels.empty() ? "" : "  ") + x0.label;
    out += fmt::format("      x0: {}\n", labels);
    for (const auto& xs : p.known_solutions) {
      out += fmt::format("      solution: {}\n", compact_label(xs));
    }
    if (p.reference_solution) {
      out += fmt::format("      reference solution (+-{}): {}\n", p.reference_tolerance,
                         compact_label(*p.reference_solution));
    }
    if (info.randomized) out += "      randomized: --seed (default 1)\n";
    if (p.repaired) out += fmt::format("      repaired: {}\n", p.notes);
  }
  return out;
}

}  // namespace irqn::bench
