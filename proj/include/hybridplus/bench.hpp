#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridplus/solver.hpp"

namespace hybridplus {

enum class Metric { Iterations, FunctionEvals, WallTime };

std::string_view to_string(Metric metric);
/// Accepts "iters"/"iterations", "fevals", "time"/"time_s"/"wall_time".
Metric metric_from_string(std::string_view text);

struct NamedSolver {
  std::string name;
  SolverConfig config;
};

/// Drops grid points matching every field that is set.
struct Exclusion {
  std::optional<int> problem;
  std::optional<std::size_t> dim;
  std::optional<int> x0;

  bool matches(int p, std::size_t n, int x0_id) const;
};

struct SuiteSpec {
  std::vector<int> problems;
  std::vector<std::size_t> dims;
  std::vector<int> x0_ids;
  std::uint64_t seed = 1;
  std::vector<NamedSolver> solvers;
  std::optional<double> time_limit_s;
  std::vector<Exclusion> exclusions;
  std::size_t jobs = 1;
  // Problem 7 costs O(n^2) per evaluation; larger dims are left out.
  std::size_t quadratic_dim_cap = 10000;

  /// Problems 1-10, n in {1000, 5000}, x0 ids 1-9, hybrid+ defaults,
  /// Problem 8 with x0^9 excluded.
  static SuiteSpec desk();
  /// desk() widened to n up to 100000 and all ten starting points.
  static SuiteSpec full();

  /// Throws std::invalid_argument on an empty list, unknown id or bad config.
  void validate() const;
};

struct GridPoint {
  std::size_t solver;  // index into SuiteSpec::solvers
  int problem;
  std::size_t dim;
  int x0;
};

/// The cross product in (solver, problem, dim, x0) order, sorted and
/// deduplicated, minus exclusions and capped quadratic problems.
std::vector<GridPoint> expand_grid(const SuiteSpec& spec);

struct ResultRow {
  std::string solver;
  int problem = 0;
  std::size_t dim = 0;
  int x0 = 0;
  SolveStatus status = SolveStatus::NumericalBreakdown;
  std::size_t iterations = 0;
  std::size_t fevals = 0;
  double wall_time_s = 0.0;
  double fnorm = 0.0;

  bool converged() const { return status == SolveStatus::Converged; }
  bool operator==(const ResultRow&) const = default;
};

struct ResultsTable {
  std::vector<ResultRow> rows;
  std::uint64_t seed = 0;
};

/// Runs every grid point once, `spec.jobs` at a time. Row order is that of
/// expand_grid regardless of completion order; a failing row never aborts
/// the suite.
ResultsTable run_suite(const SuiteSpec& spec);

struct ProfilePoint {
  double tau = 1.0;
  double rho = 0.0;
};

/// Right-continuous step function rho_s(tau) given by its breakpoints.
struct SolverCurve {
  std::string solver;
  std::vector<ProfilePoint> points;
  std::size_t solved = 0;

  double rho_at(double tau) const;
};

struct ProfileCurves {
  Metric metric = Metric::Iterations;
  std::size_t instances = 0;
  double tau_max = 1.0;
  std::vector<SolverCurve> curves;

  const SolverCurve& curve(std::string_view solver) const;
};

/// Dolan-More performance profile. An instance is a (problem, dim, x0)
/// triple; r = t / min_s t over solvers that converged on it, failures get
/// r = inf. Metric values are floored (1 for counts, 1e-9 s for time) before
/// dividing. Throws std::invalid_argument on an empty table.
ProfileCurves performance_profile(const ResultsTable& table, Metric metric);

inline constexpr std::string_view kResultsCsvHeader =
    "solver,problem,dim,x0,status,iters,fevals,time_s,fnorm";
inline constexpr std::string_view kProfileCsvHeader = "solver,tau,rho";

void write_csv(std::ostream& out, const ResultsTable& table);
void write_csv(std::ostream& out, const ProfileCurves& curves);
ResultsTable read_results_csv(std::istream& in);

std::string to_json(const ResultsTable& table);
std::string to_json(const ProfileCurves& curves);
ResultsTable results_from_json(std::string_view text);

// File variants. I/O failures throw std::runtime_error naming the path.
void emit_csv(const ResultsTable& table, const std::filesystem::path& path);
void emit_csv(const ProfileCurves& curves, const std::filesystem::path& path);
void emit_json(const ResultsTable& table, const std::filesystem::path& path);
void emit_json(const ProfileCurves& curves, const std::filesystem::path& path);
/// Reads a results file, choosing JSON for a .json extension and CSV otherwise.
ResultsTable load_results(const std::filesystem::path& path);

/// Builds a SuiteSpec from TOML text. Keys left out fall back to desk().
SuiteSpec parse_suite_spec(std::string_view toml_text);
SuiteSpec load_suite_spec(const std::filesystem::path& path);

}  // namespace hybridplus
