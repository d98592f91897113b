#include "hybridplus/solver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>

#include "hybridplus/directions.hpp"
#include "hybridplus/vector_ops.hpp"

namespace hybridplus {

namespace {

constexpr std::array<std::pair<SolveStatus, std::string_view>, 5> kStatusNames{{
    {SolveStatus::Converged, "Converged"},
    {SolveStatus::MaxIterations, "MaxIterations"},
    {SolveStatus::LineSearchStall, "LineSearchStall"},
    {SolveStatus::NumericalBreakdown, "NumericalBreakdown"},
    {SolveStatus::TimeLimit, "TimeLimit"},
}};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid solver config: ") + what);
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  for (const auto& [s, name] : kStatusNames) {
    if (s == status) return name;
  }
  return "Unknown";
}

SolveStatus solve_status_from_string(std::string_view text) {
  for (const auto& [s, name] : kStatusNames) {
    if (name == text) return s;
  }
  throw std::invalid_argument("unknown solve status '" + std::string(text) + "'");
}

void SolverConfig::validate() const {
  require(rho > 0.0 && rho < 1.0, "rho must lie in (0, 1)");
  require(sigma > 0.0 && sigma < 1.0, "sigma must lie in (0, 1)");
  require(ell > 0.0 && ell < 1.0 && u >= 1.0, "need 0 < ell < 1 <= u");
  require(eta_min > 0.0 && eta_min <= eta_max && eta_max < 1.0,
          "need 0 < eta_min <= eta_max < 1");
  require(omega_hat > 0.0 && omega_hat < 0.18, "omega_hat must lie in (0, 0.18)");
  require(tol > 0.0, "tol must be positive");
  require(!time_limit_s || *time_limit_s > 0.0, "time_limit_s must be positive");
}

SolveReport solve(const ResidualFn& residual, std::span<const double> x0, const SolverConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  const std::size_t n = x0.size();
  const LineSearchConfig ls_cfg{cfg.rho, cfg.sigma, cfg.max_backtracks};

  SolveReport report;
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> F(n);
  residual(x, F);

  auto finish = [&](SolveStatus status) {
    report.status = status;
    report.final_residual_norm = norm(F);
    report.x = std::move(x);
    report.wall_time_s = elapsed();
    return std::move(report);
  };

  if (!all_finite(x) || !all_finite(F)) return finish(SolveStatus::NumericalBreakdown);

  NonmonotoneMemory mem = NonmonotoneMemory::initial(merit(F));
  std::vector<double> x_prev, F_prev, d_prev;
  std::vector<double> s(n), y(n);

  for (std::size_t k = 0;; ++k) {
    report.iterations = k;
    const double fnorm = norm(F);
    if (fnorm <= cfg.tol) return finish(SolveStatus::Converged);
    if (k >= cfg.max_iter) return finish(SolveStatus::MaxIterations);
    if (cfg.time_limit_s && elapsed() > *cfg.time_limit_s) return finish(SolveStatus::TimeLimit);

    std::vector<double> d;
    double beta = 0.0;
    double b_min = 1.0;
    double b_max = 1.0;
    if (k == 0) {
      d.resize(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = -F[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = x[i] - x_prev[i];
        y[i] = F[i] - F_prev[i];
      }
      const DirectionContext ctx{F, F_prev, d_prev, s, y, k};
      const DiagonalScaling scaling = spectral_diagonal(s, y, cfg.ell, cfg.u);
      beta = hybrid_beta(ctx);
      d = assemble_direction(F, scaling, beta, d_prev);
      const auto [lo, hi] = std::minmax_element(scaling.b.begin(), scaling.b.end());
      b_min = *lo;
      b_max = *hi;
    }
    const double dnorm = norm(d);
    if (!std::isfinite(dnorm) || dnorm == 0.0) return finish(SolveStatus::NumericalBreakdown);

    const double tau = tau_schedule(k);
    LineSearchOutcome step = nonmonotone_search(x, d, mem, tau, ls_cfg, residual);
    report.fevals += step.trials;
    if (!step.accepted()) return finish(SolveStatus::LineSearchStall);

    const double eta = eta_schedule(k, cfg.omega_hat, cfg.eta_min, cfg.eta_max);
    const NonmonotoneMemory next = update_memory(mem, eta, tau, step.f_next);

    if (cfg.record_trace) {
      report.trace.push_back({
          .k = k,
          .fnorm = fnorm,
          .f = merit(F),
          .C = mem.C,
          .Q = mem.Q,
          .tau = tau,
          .eta = eta,
          .beta = beta,
          .b_min = b_min,
          .b_max = b_max,
          .dnorm = dnorm,
          .lambda = step.lambda,
          .sign = step.sign,
          .trials = step.trials,
          .f_next = step.f_next,
          .rhs = step.rhs,
          .C_next = next.C,
          .Q_next = next.Q,
      });
    }

    x_prev = std::exchange(x, std::move(step.x_next));
    F_prev = std::exchange(F, std::move(step.F_next));
    d_prev = std::move(d);
    mem = next;
  }
}

SolveReport solve(const Problem& problem, std::span<const double> x0, const SolverConfig& cfg) {
  if (x0.size() != problem.dim()) {
    throw std::invalid_argument("x0 has length " + std::to_string(x0.size()) + ", problem " +
                                std::to_string(problem.id()) + " has n = " +
                                std::to_string(problem.dim()));
  }
  return solve([&problem](std::span<const double> x, std::span<double> fx) { problem.evaluate(x, fx); },
               x0, cfg);
}

}  // namespace hybridplus
