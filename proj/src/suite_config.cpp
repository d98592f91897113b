#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "hybridplus/bench.hpp"

namespace hybridplus {

namespace {

template <typename T>
std::vector<T> integer_list(const toml::table& root, std::string_view key) {
  const toml::array* arr = root[key].as_array();
  if (!arr) throw std::invalid_argument("'" + std::string(key) + "' must be an array of integers");
  std::vector<T> out;
  for (const auto& node : *arr) {
    const auto v = node.value<std::int64_t>();
    if (!v || *v < 0) {
      throw std::invalid_argument("'" + std::string(key) + "' must hold nonnegative integers");
    }
    out.push_back(static_cast<T>(*v));
  }
  return out;
}

template <typename T>
void read_into(const toml::table& t, std::string_view key, T& field) {
  const toml::node* node = t.get(key);
  if (!node) return;
  if constexpr (std::is_same_v<T, double>) {
    // Integers are accepted where a real is expected (e.g. u = 10000000000).
    if (auto v = node->value<double>()) {
      field = *v;
      return;
    }
  } else {
    if (auto v = node->value<std::int64_t>(); v && *v >= 0) {
      field = static_cast<T>(*v);
      return;
    }
  }
  throw std::invalid_argument("bad value for '" + std::string(key) + "'");
}

SolverConfig solver_config(const toml::table& t) {
  SolverConfig cfg;
  read_into(t, "rho", cfg.rho);
  read_into(t, "sigma", cfg.sigma);
  read_into(t, "eta_min", cfg.eta_min);
  read_into(t, "eta_max", cfg.eta_max);
  read_into(t, "ell", cfg.ell);
  read_into(t, "u", cfg.u);
  read_into(t, "omega_hat", cfg.omega_hat);
  read_into(t, "tol", cfg.tol);
  read_into(t, "max_iter", cfg.max_iter);
  read_into(t, "max_backtracks", cfg.max_backtracks);
  return cfg;
}

}  // namespace

SuiteSpec parse_suite_spec(std::string_view toml_text) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "suite spec: " << e.description() << " (line " << e.source().begin.line << ")";
    throw std::invalid_argument(msg.str());
  }

  SuiteSpec spec = SuiteSpec::desk();
  if (root.contains("problems")) spec.problems = integer_list<int>(root, "problems");
  if (root.contains("dims")) spec.dims = integer_list<std::size_t>(root, "dims");
  if (root.contains("x0")) spec.x0_ids = integer_list<int>(root, "x0");
  read_into(root, "seed", spec.seed);
  read_into(root, "jobs", spec.jobs);
  read_into(root, "quadratic_dim_cap", spec.quadratic_dim_cap);
  if (root.contains("time_limit")) {
    double limit = 0.0;
    read_into(root, "time_limit", limit);
    spec.time_limit_s = limit;
  }

  if (root.contains("exclude")) {
    const toml::array* arr = root["exclude"].as_array();
    if (!arr) throw std::invalid_argument("'exclude' must be an array of tables");
    spec.exclusions.clear();
    for (const auto& node : *arr) {
      const toml::table* t = node.as_table();
      if (!t) throw std::invalid_argument("'exclude' entries must be tables");
      Exclusion e;
      if (auto v = (*t)["problem"].value<std::int64_t>()) e.problem = static_cast<int>(*v);
      if (auto v = (*t)["dim"].value<std::int64_t>()) e.dim = static_cast<std::size_t>(*v);
      if (auto v = (*t)["x0"].value<std::int64_t>()) e.x0 = static_cast<int>(*v);
      spec.exclusions.push_back(e);
    }
  }

  if (root.contains("solver")) {
    const toml::array* arr = root["solver"].as_array();
    if (!arr) throw std::invalid_argument("'solver' must be an array of tables ([[solver]])");
    spec.solvers.clear();
    for (const auto& node : *arr) {
      const toml::table* t = node.as_table();
      if (!t) throw std::invalid_argument("'solver' entries must be tables");
      NamedSolver s;
      s.name = (*t)["name"].value_or(std::string("hybrid+"));
      s.config = solver_config(*t);
      spec.solvers.push_back(std::move(s));
    }
  }
  return spec;
}

SuiteSpec load_suite_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open suite spec '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_suite_spec(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace hybridplus
