// vibench: run the VI solvers over the problem suite, list problems, and
// compare result files.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "irqn/bench.hpp"
#include "irqn/config.hpp"
#include "irqn/problems.hpp"

namespace {

struct RunArgs {
  std::vector<std::string> problems;
  irqn::Index n = 0;
  std::vector<std::string> x0;
  std::string solver = "both";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::string config_path;
  std::string out;
  int reps = 3;
  int jobs = 1;
  std::vector<std::string> params;
};

irqn::bench::RunRequest build_request(const RunArgs& args) {
  irqn::bench::RunRequest req;
  req.solver = irqn::bench::parse_solver_choice(args.solver);
  req.reps = args.reps;
  req.jobs = args.jobs;
  if (!args.config_path.empty()) req.config = irqn::load_config(args.config_path);
  if (args.tol) req.config.tol = *args.tol;
  if (args.max_iter) req.config.max_iter = *args.max_iter;

  std::map<std::string, double> params;
  for (const auto& kv : args.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw irqn::Error(irqn::ErrorCode::ParseError, fmt::format("--param expects key=value, got '{}'", kv));
    }
    params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }

  std::vector<std::string> names;
  bool expanded = false;
  for (const auto& name : args.problems) {
    if (name == "all") {
      expanded = true;
      for (const auto& info : irqn::problem_registry()) names.push_back(info.name);
    } else {
      names.push_back(name);
    }
  }
  for (const auto& name : names) {
    const auto& info = irqn::problem_info(name);
    irqn::bench::RunItem item;
    item.spec.name = name;
    // With "all", --n only resizes the scalable problems.
    item.spec.n = expanded && info.fixed_dim ? 0 : args.n;
    if (info.randomized) item.spec.seed = args.seed;
    item.spec.params = params;
    item.x0_labels = args.x0;
    req.items.push_back(std::move(item));
  }
  return req;
}

void print_summary(const std::vector<irqn::bench::ResultRow>& rows) {
  fmt::print("{:<6} {:>6} {:<24} {:<5} {:>6} {:>10} {:>10}  {}\n", "prob", "n", "x0", "solv", "iter",
             "time_s", "res", "status");
  for (const auto& r : rows) {
    fmt::print("{:<6} {:>6} {:<24} {:<5} {:>6} {:>10.3e} {:>10.3e}  {}\n", r.problem, r.n, r.x0,
               r.solver, r.iter, r.time_s, r.res, r.status);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational inequality solver benchmark harness"};
  app.require_subcommand(1);

  RunArgs args;
  auto* run = app.add_subcommand("run", "Run solvers and emit CSV");
  run->add_option("--problem", args.problems, "Problem name (ex1..ex12) or 'all'; repeatable");
  run->add_option("--n", args.n, "Dimension (scalable problems)");
  run->add_option("--x0", args.x0, "Initial point label; repeatable (default: all)");
  run->add_option("--solver", args.solver, "irqn, inm or both")
      ->check(CLI::IsMember({"irqn", "inm", "both"}));
  run->add_option("--seed", args.seed, "Seed for randomized problems");
  run->add_option("--tol", args.tol, "Stopping tolerance");
  run->add_option("--max-iter", args.max_iter, "Outer iteration cap");
  run->add_option("--config", args.config_path, "key=value solver configuration file")
      ->check(CLI::ExistingFile);
  run->add_option("--out", args.out, "CSV output path (default: stdout)");
  run->add_option("--reps", args.reps, "Timing repetitions (median reported)")
      ->check(CLI::PositiveNumber);
  run->add_option("--jobs", args.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  run->add_option("--param", args.params, "Problem parameter key=value (e.g. rho=1)");

  auto* list = app.add_subcommand("list", "List the problem registry");

  std::string csv_a, csv_b;
  auto* cmp = app.add_subcommand("compare", "Compare two result CSV files");
  cmp->add_option("baseline", csv_a, "First CSV")->required()->check(CLI::ExistingFile);
  cmp->add_option("candidate", csv_b, "Second CSV")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto rows = irqn::bench::run(build_request(args));
      if (args.out.empty()) {
        irqn::bench::write_csv(std::cout, rows);
      } else {
        irqn::bench::write_csv(args.out, rows);
        print_summary(rows);
      }
    } else if (*list) {
      fmt::print("{}", irqn::bench::render_problem_list());
    } else if (*cmp) {
      const auto result =
          irqn::bench::compare(irqn::bench::read_csv_file(csv_a), irqn::bench::read_csv_file(csv_b));
      fmt::print("{}", irqn::bench::render(result));
    }
  } catch (const std::exception& err) {
    fmt::print(stderr, "vibench: {}\n", err.what());
    return 2;
  }
  return 0;
}
