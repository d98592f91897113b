#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hybridplus/linesearch.hpp"
#include "hybridplus/problems.hpp"

namespace hybridplus {

/// Parameters of the hybrid+ iteration. Defaults match the reference runs.
struct SolverConfig {
  double rho = 0.5;
  double sigma = 1e-4;
  double eta_min = 0.1;
  double eta_max = 0.85;
  double ell = 1e-10;
  double u = 1e10;
  double omega_hat = 0.15;
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  std::size_t max_backtracks = 60;
  std::optional<double> time_limit_s;
  bool record_trace = false;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

enum class SolveStatus { Converged, MaxIterations, LineSearchStall, NumericalBreakdown, TimeLimit };

std::string_view to_string(SolveStatus status);
/// Inverse of to_string; throws std::invalid_argument on unknown text.
SolveStatus solve_status_from_string(std::string_view text);

/// One accepted iteration k -> k+1.
struct TraceRecord {
  std::size_t k = 0;
  double fnorm = 0.0;  // |F(x_k)|
  double f = 0.0;      // f(x_k)
  double C = 0.0;      // C_k
  double Q = 0.0;      // Q_k
  double tau = 0.0;
  double eta = 0.0;
  double beta = 0.0;
  double b_min = 1.0;
  double b_max = 1.0;
  double dnorm = 0.0;
  double lambda = 0.0;
  int sign = 0;
  std::size_t trials = 0;
  double f_next = 0.0;  // f(x_{k+1})
  double rhs = 0.0;     // C_k + tau_k - sigma lambda^2 |d_k|^2
  double C_next = 0.0;
  double Q_next = 0.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::NumericalBreakdown;
  std::size_t iterations = 0;
  // Residual evaluations after the initial F(x0).
  std::size_t fevals = 0;
  double wall_time_s = 0.0;
  double final_residual_norm = 0.0;
  std::vector<double> x;
  std::vector<TraceRecord> trace;

  bool converged() const { return status == SolveStatus::Converged; }
};

SolveReport solve(const ResidualFn& residual, std::span<const double> x0, const SolverConfig& cfg);
SolveReport solve(const Problem& problem, std::span<const double> x0, const SolverConfig& cfg);

}  // namespace hybridplus
