// Command-line front end: single solves, benchmark grids and performance
// profiles.
//
//   hybridplus solve --problem 7 --dim 5000 --x0 1 [--seed S] [--trace]
//   hybridplus bench [--spec spec.toml] --out results.csv [--full] [--jobs J]
//   hybridplus profile --in results.csv --metric iters --out profile.csv

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hybridplus/bench.hpp"
#include "hybridplus/problems.hpp"
#include "hybridplus/solver.hpp"

namespace {

using nlohmann::json;
using namespace hybridplus;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json trace_json(const std::vector<TraceRecord>& trace) {
  json out = json::array();
  for (const auto& t : trace) {
    out.push_back({{"k", t.k},
                   {"fnorm", finite_or_null(t.fnorm)},
                   {"f", finite_or_null(t.f)},
                   {"C", finite_or_null(t.C)},
                   {"Q", t.Q},
                   {"tau", t.tau},
                   {"eta", t.eta},
                   {"beta", finite_or_null(t.beta)},
                   {"b_min", t.b_min},
                   {"b_max", t.b_max},
                   {"dnorm", finite_or_null(t.dnorm)},
                   {"lambda", t.lambda},
                   {"sign", t.sign},
                   {"trials", t.trials},
                   {"f_next", finite_or_null(t.f_next)},
                   {"C_next", finite_or_null(t.C_next)},
                   {"Q_next", t.Q_next}});
  }
  return out;
}

bool has_json_extension(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid+ derivative-free solver for nonlinear systems F(x) = 0"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one problem and print a JSON report");
  std::string problem_key;
  std::size_t dim = 1000;
  int x0_id = 1;
  std::uint64_t seed = 1;
  bool trace = false;
  SolverConfig cfg;
  solve_cmd->add_option("--problem,-p", problem_key, "Problem id (1-10) or name")->required();
  solve_cmd->add_option("--dim,-n", dim, "Dimension n")->required()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--x0", x0_id, "Initial point id (1-10)")->check(CLI::Range(1, 10));
  solve_cmd->add_option("--seed", seed, "Seed for the random initial point (id 10)");
  solve_cmd->add_flag("--trace", trace, "Include per-iteration records");
  solve_cmd->add_option("--tol", cfg.tol, "Stop when |F(x)| <= tol");
  solve_cmd->add_option("--max-iter", cfg.max_iter, "Iteration limit");
  solve_cmd->add_option("--omega-hat", cfg.omega_hat, "Parameter of the eta schedule, in (0, 0.18)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid and write a results table");
  std::string spec_path;
  std::string out_path;
  bool full = false;
  std::optional<std::size_t> jobs;
  bench_cmd->add_option("--spec", spec_path, "Suite spec (TOML)")->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", out_path, "Results file (.csv or .json)")->required();
  bench_cmd->add_flag("--full", full, "Full grid: n up to 100000, all ten initial points");
  bench_cmd->add_option("--jobs,-j", jobs, "Parallel solves")->check(CLI::PositiveNumber);

  // profile
  auto* profile_cmd = app.add_subcommand("profile", "Compute performance profiles from results");
  std::string in_path;
  std::string metric_name = "iters";
  std::string profile_out;
  profile_cmd->add_option("--in", in_path, "Results file from 'bench'")->required()->check(CLI::ExistingFile);
  profile_cmd->add_option("--metric", metric_name, "iters, fevals or time");
  profile_cmd->add_option("--out", profile_out, "Profile file (.csv or .json)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      const Problem problem = make_problem(problem_id_from_string(problem_key), dim);
      cfg.record_trace = trace;
      const auto x0 = initial_point({x0_id, dim, seed});
      const SolveReport report = solve(problem, x0, cfg);
      json out = {{"solver", "hybrid+"},
                  {"problem", problem.id()},
                  {"name", problem.name()},
                  {"dim", dim},
                  {"x0", x0_id},
                  {"seed", seed},
                  {"status", to_string(report.status)},
                  {"iters", report.iterations},
                  {"fevals", report.fevals},
                  {"time_s", report.wall_time_s},
                  {"fnorm", finite_or_null(report.final_residual_norm)}};
      if (trace) out["trace"] = trace_json(report.trace);
      std::cout << out.dump(2) << '\n';
    } else if (*bench_cmd) {
      SuiteSpec spec = spec_path.empty() ? SuiteSpec::desk() : load_suite_spec(spec_path);
      if (full) {
        const SuiteSpec wide = SuiteSpec::full();
        spec.dims = wide.dims;
        spec.x0_ids = wide.x0_ids;
      }
      if (jobs) spec.jobs = *jobs;
      const ResultsTable table = run_suite(spec);
      if (has_json_extension(out_path)) {
        emit_json(table, out_path);
      } else {
        emit_csv(table, out_path);
      }
      std::size_t converged = 0;
      for (const auto& r : table.rows) converged += r.converged() ? 1 : 0;
      std::cerr << "bench: " << table.rows.size() << " runs, " << converged << " converged, seed "
                << table.seed << " -> " << out_path << '\n';
    } else if (*profile_cmd) {
      const ResultsTable table = load_results(in_path);
      const ProfileCurves curves = performance_profile(table, metric_from_string(metric_name));
      if (has_json_extension(profile_out)) {
        emit_json(curves, profile_out);
      } else {
        emit_csv(curves, profile_out);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
