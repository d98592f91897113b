#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hybridplus {

/// Diagonal Jacobian surrogate diag(b) built from per-coordinate secant
/// quotients y_i / s_i clamped into [lower, upper]. The direction uses its
/// inverse, so applying the scaling to v yields v_i / b_i.
struct DiagonalScaling {
  std::vector<double> b;
  double lower = 0.0;
  double upper = 0.0;

  std::vector<double> apply(std::span<const double> v) const;
};

/// Quantities from the previous accepted step. All spans share one length.
struct DirectionContext {
  std::span<const double> F_curr;  // F(x_k)
  std::span<const double> F_prev;  // F(x_{k-1})
  std::span<const double> d_prev;  // d_{k-1}
  std::span<const double> s_prev;  // x_k - x_{k-1}
  std::span<const double> y_prev;  // F(x_k) - F(x_{k-1})
  std::size_t k = 0;
};

/// b_i = max{min{y_i / s_i, upper}, lower} if s_i != 0 (exact comparison),
/// b_i = 1 otherwise. Non-finite quotients clamp to the nearest bound.
/// Throws std::invalid_argument on length mismatch or unless
/// 0 < lower < 1 <= upper.
DiagonalScaling spectral_diagonal(std::span<const double> s_prev, std::span<const double> y_prev,
                                  double lower, double upper);

/// Nonnegative hybrid HS+/PRP+ parameter
///   max{0, <F_k, y>} / max{<d_{k-1}, y>, |F_{k-1}|^2}.
/// The denominator is at least |F_{k-1}|^2, which the solver keeps positive.
double hybrid_beta(const DirectionContext& ctx);

/// d = -F_curr / b + beta * d_prev, componentwise.
std::vector<double> assemble_direction(std::span<const double> F_curr,
                                       const DiagonalScaling& scaling, double beta,
                                       std::span<const double> d_prev);

/// k = 0: d = -F_curr. k >= 1: assemble_direction with beta = hybrid_beta(ctx).
std::vector<double> search_direction(const DirectionContext& ctx, const DiagonalScaling& scaling);

}  // namespace hybridplus
