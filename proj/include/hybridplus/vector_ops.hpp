#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace hybridplus {

// Reductions are sequential on purpose: a fixed summation order keeps every
// solve bitwise reproducible regardless of the OpenMP thread count.

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(squared_norm(a)); }

inline bool all_finite(std::span<const double> a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace hybridplus
