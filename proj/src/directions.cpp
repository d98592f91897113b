#include "hybridplus/directions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hybridplus/vector_ops.hpp"

namespace hybridplus {

std::vector<double> DiagonalScaling::apply(std::span<const double> v) const {
  if (v.size() != b.size()) throw std::invalid_argument("scaling length mismatch");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / b[i];
  return out;
}

DiagonalScaling spectral_diagonal(std::span<const double> s_prev, std::span<const double> y_prev,
                                  double lower, double upper) {
  if (s_prev.size() != y_prev.size()) {
    throw std::invalid_argument("spectral_diagonal: s and y differ in length");
  }
  if (!(lower > 0.0 && lower < 1.0 && upper >= 1.0)) {
    throw std::invalid_argument("spectral_diagonal: need 0 < lower < 1 <= upper");
  }
  DiagonalScaling out{std::vector<double>(s_prev.size()), lower, upper};
  for (std::size_t i = 0; i < s_prev.size(); ++i) {
    if (s_prev[i] == 0.0) {
      out.b[i] = 1.0;
    } else {
      // fmin/fmax map a NaN quotient to the bound instead of propagating it.
      out.b[i] = std::fmax(std::fmin(y_prev[i] / s_prev[i], upper), lower);
    }
  }
  return out;
}

double hybrid_beta(const DirectionContext& ctx) {
  const double numerator = std::max(0.0, dot(ctx.F_curr, ctx.y_prev));
  const double denominator = std::max(dot(ctx.d_prev, ctx.y_prev), squared_norm(ctx.F_prev));
  return numerator / denominator;
}

std::vector<double> assemble_direction(std::span<const double> F_curr,
                                       const DiagonalScaling& scaling, double beta,
                                       std::span<const double> d_prev) {
  const std::size_t n = F_curr.size();
  if (scaling.b.size() != n || d_prev.size() != n) {
    throw std::invalid_argument("assemble_direction: length mismatch");
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = -(F_curr[i] / scaling.b[i]) + beta * d_prev[i];
  return d;
}

std::vector<double> search_direction(const DirectionContext& ctx, const DiagonalScaling& scaling) {
  if (ctx.k == 0) {
    std::vector<double> d(ctx.F_curr.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = -ctx.F_curr[i];
    return d;
  }
  return assemble_direction(ctx.F_curr, scaling, hybrid_beta(ctx), ctx.d_prev);
}

}  // namespace hybridplus
