#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hybridplus {

/// Residual oracle: writes F(x) into fx (same length as x).
using ResidualFn = std::function<void(std::span<const double> x, std::span<double> fx)>;

/// f = 0.5 |F|^2, or +inf when any component of F is non-finite.
double merit(std::span<const double> F);

/// Summable slack tau_k = 2^-k. Underflows to 0 for large k.
double tau_schedule(std::size_t k);

/// eta_k = 0.75 exp(min{omega_hat, (k/75)^2}) + 0.1, clamped into
/// [eta_min, eta_max]. Throws std::invalid_argument unless
/// 0 < omega_hat < 0.18 and 0 < eta_min <= eta_max < 1.
double eta_schedule(std::size_t k, double omega_hat, double eta_min, double eta_max);

/// Reference value C and weight Q of the nonmonotone acceptance rule.
struct NonmonotoneMemory {
  double C = 0.0;
  double Q = 1.0;
  std::size_t k = 0;

  static NonmonotoneMemory initial(double f0) { return {f0, 1.0, 0}; }
};

/// Q' = eta Q + 1,  C' = (eta Q (C + tau) + f_next) / Q',  k' = k + 1.
/// Throws std::invalid_argument unless 0 <= eta < 1 and f_next is finite and
/// nonnegative.
NonmonotoneMemory update_memory(const NonmonotoneMemory& mem, double eta, double tau,
                                double f_next);

struct LineSearchConfig {
  double rho = 0.5;
  double sigma = 1e-4;
  std::size_t max_backtracks = 60;
};

enum class LineSearchStatus { Accepted, Stalled };

struct LineSearchOutcome {
  LineSearchStatus status = LineSearchStatus::Stalled;
  double lambda = 0.0;
  int sign = 0;  // +1: x + lambda d accepted, -1: x - lambda d accepted
  std::vector<double> x_next;
  std::vector<double> F_next;
  double f_next = 0.0;
  double rhs = 0.0;  // C + tau - sigma lambda^2 |d|^2 at the accepted lambda
  std::size_t trials = 0;
  std::size_t halvings = 0;

  bool accepted() const { return status == LineSearchStatus::Accepted; }
};

/// Bidirectional derivative-free backtracking. For lambda = 1, rho, rho^2, ...
/// tries x + lambda d and then x - lambda d, accepting the first trial with
///   f(trial) <= C + tau - sigma lambda^2 |d|^2.
/// Non-finite merit counts as failure. After max_backtracks reductions without
/// acceptance the outcome is Stalled. `trials` counts every oracle call.
LineSearchOutcome nonmonotone_search(std::span<const double> x, std::span<const double> d,
                                     const NonmonotoneMemory& mem, double tau,
                                     const LineSearchConfig& cfg, const ResidualFn& residual);

}  // namespace hybridplus
