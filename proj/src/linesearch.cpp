#include "hybridplus/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hybridplus/vector_ops.hpp"

namespace hybridplus {

double merit(std::span<const double> F) {
  if (!all_finite(F)) return std::numeric_limits<double>::infinity();
  return 0.5 * squared_norm(F);
}

double tau_schedule(std::size_t k) {
  // Past 2^-1100 the result is zero anyway; cap to stay in int range.
  return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(k, 1100)));
}

double eta_schedule(std::size_t k, double omega_hat, double eta_min, double eta_max) {
  if (!(omega_hat > 0.0 && omega_hat < 0.18)) {
    throw std::invalid_argument("eta_schedule: omega_hat must lie in (0, 0.18)");
  }
  if (!(eta_min > 0.0 && eta_min <= eta_max && eta_max < 1.0)) {
    throw std::invalid_argument("eta_schedule: need 0 < eta_min <= eta_max < 1");
  }
  const double ratio = static_cast<double>(k) / 75.0;
  const double raw = 0.75 * std::exp(std::min(omega_hat, ratio * ratio)) + 0.1;
  return std::clamp(raw, eta_min, eta_max);
}

NonmonotoneMemory update_memory(const NonmonotoneMemory& mem, double eta, double tau,
                                double f_next) {
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("update_memory: eta not in [0, 1)");
  if (!(std::isfinite(f_next) && f_next >= 0.0)) {
    throw std::invalid_argument("update_memory: f_next must be finite and nonnegative");
  }
  const double weighted = eta * mem.Q;
  const double Q = weighted + 1.0;
  const double C = (weighted * (mem.C + tau) + f_next) / Q;
  return {C, Q, mem.k + 1};
}

LineSearchOutcome nonmonotone_search(std::span<const double> x, std::span<const double> d,
                                     const NonmonotoneMemory& mem, double tau,
                                     const LineSearchConfig& cfg, const ResidualFn& residual) {
  const std::size_t n = x.size();
  if (d.size() != n) throw std::invalid_argument("nonmonotone_search: x and d differ in length");
  if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
  if (!(cfg.sigma > 0.0 && cfg.sigma < 1.0)) throw std::invalid_argument("sigma must lie in (0, 1)");
  const double dd = squared_norm(d);
  if (!(dd > 0.0)) throw std::invalid_argument("nonmonotone_search: direction must be nonzero");

  LineSearchOutcome out;
  out.x_next.resize(n);
  out.F_next.resize(n);

  double lambda = 1.0;
  for (std::size_t m = 0;; ++m) {
    const double rhs = mem.C + tau - cfg.sigma * lambda * lambda * dd;
    for (int sign : {+1, -1}) {
      const double step = sign * lambda;
      for (std::size_t i = 0; i < n; ++i) out.x_next[i] = x[i] + step * d[i];
      residual(out.x_next, out.F_next);
      ++out.trials;
      const double f = merit(out.F_next);
      if (f <= rhs) {
        out.status = LineSearchStatus::Accepted;
        out.lambda = lambda;
        out.sign = sign;
        out.f_next = f;
        out.rhs = rhs;
        out.halvings = m;
        return out;
      }
    }
    if (m == cfg.max_backtracks) break;
    lambda *= cfg.rho;
  }
  out.status = LineSearchStatus::Stalled;
  out.lambda = lambda;
  out.halvings = cfg.max_backtracks;
  return out;
}

}  // namespace hybridplus
