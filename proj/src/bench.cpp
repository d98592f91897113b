#include "hybridplus/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace hybridplus {

namespace {

using json = nlohmann::json;

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

template <typename T>
T parse_number(std::string_view field, std::string_view what, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::runtime_error("results csv line " + std::to_string(line) + ": bad " +
                             std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from_json(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

void require_valid_solver_name(std::string_view name) {
  if (name.empty() || name.find_first_of(",\"\n\r") != std::string_view::npos) {
    throw std::invalid_argument("solver name '" + std::string(name) +
                                "' must be nonempty and free of commas, quotes and newlines");
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

double metric_value(const ResultRow& row, Metric metric) {
  switch (metric) {
    case Metric::Iterations: return std::max<double>(1.0, static_cast<double>(row.iterations));
    case Metric::FunctionEvals: return std::max<double>(1.0, static_cast<double>(row.fevals));
    case Metric::WallTime: return std::max(1e-9, row.wall_time_s);
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Iterations: return "iters";
    case Metric::FunctionEvals: return "fevals";
    case Metric::WallTime: return "time_s";
  }
  return "unknown";
}

Metric metric_from_string(std::string_view text) {
  if (text == "iters" || text == "iterations") return Metric::Iterations;
  if (text == "fevals") return Metric::FunctionEvals;
  if (text == "time" || text == "time_s" || text == "wall_time") return Metric::WallTime;
  throw std::invalid_argument("unknown metric '" + std::string(text) +
                              "' (expected iters, fevals or time)");
}

bool Exclusion::matches(int p, std::size_t n, int x0_id) const {
  return (!problem || *problem == p) && (!dim || *dim == n) && (!x0 || *x0 == x0_id);
}

SuiteSpec SuiteSpec::desk() {
  SuiteSpec spec;
  spec.problems.resize(Problem::kCount);
  std::iota(spec.problems.begin(), spec.problems.end(), 1);
  spec.dims = {1000, 5000};
  spec.x0_ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  spec.solvers = {{"hybrid+", SolverConfig{}}};
  spec.exclusions = {{8, std::nullopt, 9}};
  return spec;
}

SuiteSpec SuiteSpec::full() {
  SuiteSpec spec = desk();
  spec.dims = {1000, 5000, 10000, 50000, 100000};
  spec.x0_ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  return spec;
}

void SuiteSpec::validate() const {
  if (solvers.empty()) throw std::invalid_argument("suite has no solvers");
  if (problems.empty()) throw std::invalid_argument("suite has no problems");
  if (dims.empty()) throw std::invalid_argument("suite has no dimensions");
  if (x0_ids.empty()) throw std::invalid_argument("suite has no initial points");
  if (jobs == 0) throw std::invalid_argument("jobs must be at least 1");
  for (int p : problems) problem_name(p);
  for (int id : x0_ids) {
    if (id < 1 || id > kInitialPointCount) {
      throw std::invalid_argument("unknown initial point id " + std::to_string(id));
    }
  }
  for (std::size_t n : dims) {
    if (n < 3) throw std::invalid_argument("suite dimensions must be at least 3");
  }
  std::vector<std::string> names;
  for (const auto& s : solvers) {
    require_valid_solver_name(s.name);
    s.config.validate();
    names.push_back(s.name);
  }
  if (sorted_unique(names).size() != names.size()) {
    throw std::invalid_argument("solver names must be unique");
  }
  if (time_limit_s && !(*time_limit_s > 0.0)) {
    throw std::invalid_argument("time limit must be positive");
  }
}

std::vector<GridPoint> expand_grid(const SuiteSpec& spec) {
  std::vector<GridPoint> grid;
  const auto problems = sorted_unique(spec.problems);
  const auto dims = sorted_unique(spec.dims);
  const auto x0s = sorted_unique(spec.x0_ids);
  for (std::size_t s = 0; s < spec.solvers.size(); ++s) {
    for (int p : problems) {
      for (std::size_t n : dims) {
        if (p == 7 && n > spec.quadratic_dim_cap) continue;
        for (int x0 : x0s) {
          const bool excluded = std::any_of(spec.exclusions.begin(), spec.exclusions.end(),
                                            [&](const Exclusion& e) { return e.matches(p, n, x0); });
          if (!excluded) grid.push_back({s, p, n, x0});
        }
      }
    }
  }
  return grid;
}

ResultsTable run_suite(const SuiteSpec& spec) {
  spec.validate();
  const std::vector<GridPoint> grid = expand_grid(spec);
  ResultsTable table;
  table.seed = spec.seed;
  table.rows.resize(grid.size());

  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(spec.jobs))
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    const GridPoint& g = grid[static_cast<std::size_t>(t)];
    const NamedSolver& solver = spec.solvers[g.solver];
    ResultRow& row = table.rows[static_cast<std::size_t>(t)];
    row.solver = solver.name;
    row.problem = g.problem;
    row.dim = g.dim;
    row.x0 = g.x0;
    try {
      SolverConfig cfg = solver.config;
      cfg.record_trace = false;
      if (spec.time_limit_s) cfg.time_limit_s = spec.time_limit_s;
      const Problem problem(g.problem, g.dim);
      const auto x0 = initial_point({g.x0, g.dim, spec.seed});
      const SolveReport report = solve(problem, x0, cfg);
      row.status = report.status;
      row.iterations = report.iterations;
      row.fevals = report.fevals;
      row.wall_time_s = report.wall_time_s;
      row.fnorm = report.final_residual_norm;
    } catch (const std::exception&) {
      row.status = SolveStatus::NumericalBreakdown;
      row.fnorm = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return table;
}

double SolverCurve::rho_at(double tau) const {
  double rho = 0.0;
  for (const auto& p : points) {
    if (p.tau > tau) break;
    rho = p.rho;
  }
  return rho;
}

const SolverCurve& ProfileCurves::curve(std::string_view solver) const {
  for (const auto& c : curves) {
    if (c.solver == solver) return c;
  }
  throw std::out_of_range("no profile curve for solver '" + std::string(solver) + "'");
}

ProfileCurves performance_profile(const ResultsTable& table, Metric metric) {
  if (table.rows.empty()) throw std::invalid_argument("performance profile of an empty table");

  using Key = std::tuple<int, std::size_t, int>;
  std::vector<std::string> solvers;
  std::map<Key, std::map<std::string, double>> values;  // converged rows only
  for (const auto& row : table.rows) {
    if (std::find(solvers.begin(), solvers.end(), row.solver) == solvers.end()) {
      solvers.push_back(row.solver);
    }
    auto& per_solver = values[{row.problem, row.dim, row.x0}];
    if (row.converged()) per_solver[row.solver] = metric_value(row, metric);
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::map<std::string, std::vector<double>> ratios;
  for (const auto& [key, per_solver] : values) {
    double best = inf;
    for (const auto& [name, v] : per_solver) best = std::min(best, v);
    for (const auto& name : solvers) {
      auto it = per_solver.find(name);
      ratios[name].push_back(it == per_solver.end() ? inf : it->second / best);
    }
  }

  ProfileCurves out;
  out.metric = metric;
  out.instances = values.size();
  double max_ratio = 1.0;
  for (const auto& [name, r] : ratios) {
    for (double v : r) {
      if (std::isfinite(v)) max_ratio = std::max(max_ratio, v);
    }
  }
  out.tau_max = 2.0 * max_ratio;

  const double np = static_cast<double>(out.instances);
  for (const auto& name : solvers) {
    std::vector<double> r = ratios[name];
    std::sort(r.begin(), r.end());
    SolverCurve curve;
    curve.solver = name;
    curve.solved = static_cast<std::size_t>(
        std::count_if(r.begin(), r.end(), [](double v) { return std::isfinite(v); }));
    // rho(1) is always a breakpoint; afterwards one per distinct finite ratio.
    const auto at_one = std::upper_bound(r.begin(), r.end(), 1.0) - r.begin();
    curve.points.push_back({1.0, static_cast<double>(at_one) / np});
    for (std::size_t i = static_cast<std::size_t>(at_one); i < curve.solved; ++i) {
      if (i + 1 < curve.solved && r[i + 1] == r[i]) continue;
      curve.points.push_back({r[i], static_cast<double>(i + 1) / np});
    }
    curve.points.push_back({out.tau_max, static_cast<double>(curve.solved) / np});
    out.curves.push_back(std::move(curve));
  }
  return out;
}

void write_csv(std::ostream& out, const ResultsTable& table) {
  out << kResultsCsvHeader << '\n';
  for (const auto& r : table.rows) {
    out << r.solver << ',' << r.problem << ',' << r.dim << ',' << r.x0 << ',' << to_string(r.status)
        << ',' << r.iterations << ',' << r.fevals << ',' << format_double(r.wall_time_s) << ','
        << format_double(r.fnorm) << '\n';
  }
}

void write_csv(std::ostream& out, const ProfileCurves& curves) {
  out << kProfileCsvHeader << '\n';
  for (const auto& c : curves.curves) {
    for (const auto& p : c.points) {
      out << c.solver << ',' << format_double(p.tau) << ',' << format_double(p.rho) << '\n';
    }
  }
}

ResultsTable read_results_csv(std::istream& in) {
  ResultsTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("results csv is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsCsvHeader) {
    throw std::runtime_error("results csv header mismatch: '" + line + "'");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != 9) {
      throw std::runtime_error("results csv line " + std::to_string(lineno) + ": expected 9 fields");
    }
    ResultRow r;
    r.solver = std::string(f[0]);
    r.problem = parse_number<int>(f[1], "problem", lineno);
    r.dim = parse_number<std::size_t>(f[2], "dim", lineno);
    r.x0 = parse_number<int>(f[3], "x0", lineno);
    r.status = solve_status_from_string(f[4]);
    r.iterations = parse_number<std::size_t>(f[5], "iters", lineno);
    r.fevals = parse_number<std::size_t>(f[6], "fevals", lineno);
    r.wall_time_s = parse_number<double>(f[7], "time_s", lineno);
    r.fnorm = parse_number<double>(f[8], "fnorm", lineno);
    table.rows.push_back(std::move(r));
  }
  return table;
}

std::string to_json(const ResultsTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"solver", r.solver},
                    {"problem", r.problem},
                    {"dim", r.dim},
                    {"x0", r.x0},
                    {"status", to_string(r.status)},
                    {"iters", r.iterations},
                    {"fevals", r.fevals},
                    {"time_s", number_or_null(r.wall_time_s)},
                    {"fnorm", number_or_null(r.fnorm)}});
  }
  return json{{"seed", table.seed}, {"rows", std::move(rows)}}.dump(2);
}

std::string to_json(const ProfileCurves& curves) {
  json rows = json::array();
  for (const auto& c : curves.curves) {
    for (const auto& p : c.points) rows.push_back({{"solver", c.solver}, {"tau", p.tau}, {"rho", p.rho}});
  }
  return json{{"metric", to_string(curves.metric)},
              {"instances", curves.instances},
              {"tau_max", curves.tau_max},
              {"rows", std::move(rows)}}
      .dump(2);
}

ResultsTable results_from_json(std::string_view text) {
  const json doc = json::parse(text);
  ResultsTable table;
  table.seed = doc.value("seed", std::uint64_t{0});
  for (const auto& j : doc.at("rows")) {
    ResultRow r;
    r.solver = j.at("solver").get<std::string>();
    r.problem = j.at("problem").get<int>();
    r.dim = j.at("dim").get<std::size_t>();
    r.x0 = j.at("x0").get<int>();
    r.status = solve_status_from_string(j.at("status").get<std::string>());
    r.iterations = j.at("iters").get<std::size_t>();
    r.fevals = j.at("fevals").get<std::size_t>();
    r.wall_time_s = number_from_json(j.at("time_s"));
    r.fnorm = number_from_json(j.at("fnorm"));
    table.rows.push_back(std::move(r));
  }
  return table;
}

void emit_csv(const ResultsTable& table, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_csv(out, table);
  check_written(out, path);
}

void emit_csv(const ProfileCurves& curves, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_csv(out, curves);
  check_written(out, path);
}

void emit_json(const ResultsTable& table, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << to_json(table) << '\n';
  check_written(out, path);
}

void emit_json(const ProfileCurves& curves, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << to_json(curves) << '\n';
  check_written(out, path);
}

ResultsTable load_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    if (path.extension() == ".json") {
      std::stringstream buf;
      buf << in.rdbuf();
      return results_from_json(buf.str());
    }
    return read_results_csv(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace hybridplus
