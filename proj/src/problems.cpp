#include "hybridplus/problems.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hybridplus {

namespace {

// Below this size the fork/join cost of a parallel region outweighs an
// O(n) sweep.
constexpr std::size_t kParallelMinLinear = 1 << 14;
constexpr std::size_t kParallelMinQuadratic = 64;
// Problem 7 keeps its n x n weight matrix up to this size (32 MiB).
constexpr std::size_t kWeightCacheMaxDim = 2048;

struct ProblemInfo {
  std::string_view slug;
  std::string_view name;
  std::size_t min_dim;
};

constexpr std::array<ProblemInfo, Problem::kCount> kProblems{{
    {"modified-exponential", "Modified exponential function", 2},
    {"logarithmic", "Logarithmic function", 2},
    {"strictly-convex-1", "Strictly convex function I", 2},
    {"strictly-convex-2", "Modified strictly convex function II", 2},
    {"tridiagonal-exponential", "Tridiagonal exponential function", 3},
    {"engval-gradient", "Gradient of Engval function", 3},
    {"chandrasekhar-h", "Chandrasekhar H-equation", 2},
    {"modified-3.34", "Modified Problem 3.34", 2},
    {"nonsmooth-1", "Nonsmooth function 1", 2},
    {"nonsmooth-2", "Nonsmooth function 2", 2},
}};

const ProblemInfo& info(int id) {
  if (id < 1 || id > Problem::kCount) {
    throw std::invalid_argument("unknown problem id " + std::to_string(id));
  }
  return kProblems[static_cast<std::size_t>(id - 1)];
}

constexpr double kChandrasekharC = 0.9;

}  // namespace

std::string_view problem_slug(int id) { return info(id).slug; }
std::string_view problem_name(int id) { return info(id).name; }

int problem_id_from_string(std::string_view key) {
  int id = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
  if (ec == std::errc{} && ptr == key.data() + key.size()) {
    info(id);
    return id;
  }
  for (int i = 1; i <= Problem::kCount; ++i) {
    if (key == kProblems[i - 1].slug) return i;
  }
  throw std::invalid_argument("unknown problem '" + std::string(key) + "'");
}

Problem::Problem(int id, std::size_t n) : id_(id), n_(n), name_(info(id).name) {
  if (n < info(id).min_dim) {
    throw std::invalid_argument("problem " + std::to_string(id) + " needs n >= " +
                                std::to_string(info(id).min_dim) + ", got " +
                                std::to_string(n));
  }
  if (id == 7) {
    nodes_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      nodes_[i] = (static_cast<double>(i + 1) - 0.5) / static_cast<double>(n);
    }
    if (n <= kWeightCacheMaxDim) {
      weights_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          weights_[i * n + j] = nodes_[i] / (nodes_[i] + nodes_[j]);
        }
      }
    }
  }
}

std::string_view Problem::slug() const { return problem_slug(id_); }

std::vector<double> Problem::operator()(std::span<const double> x) const {
  std::vector<double> fx(n_);
  evaluate(x, fx);
  return fx;
}

void Problem::evaluate(std::span<const double> x, std::span<double> fx) const {
  if (x.size() != n_ || fx.size() != n_) {
    throw std::invalid_argument("problem " + std::to_string(id_) + " expects vectors of length " +
                                std::to_string(n_));
  }
  const std::size_t n = n_;
  const double dn = static_cast<double>(n);
  const bool par = n >= kParallelMinLinear;

  switch (id_) {
    case 1:
      fx[0] = std::exp(x[0]) - 1.0;
#pragma omp parallel for if (par) schedule(static)
      for (std::size_t i = 1; i < n; ++i) fx[i] = std::exp(x[i]) + x[i] - 1.0;
      break;

    case 2:
#pragma omp parallel for if (par) schedule(static)
      for (std::size_t i = 0; i < n; ++i) fx[i] = std::log(x[i] + 1.0) - x[i] / dn;
      break;

    case 3:
#pragma omp parallel for if (par) schedule(static)
      for (std::size_t i = 0; i < n; ++i) fx[i] = std::exp(x[i]) - 1.0;
      break;

    case 4: {
      const double scale = dn + 1.0;
#pragma omp parallel for if (par) schedule(static)
      for (std::size_t i = 0; i < n; ++i) {
        fx[i] = (static_cast<double>(i + 1) / scale) * std::exp(x[i]) - 1.0;
      }
      break;
    }

    case 5: {
      const double h = 1.0 / (dn + 1.0);
      fx[0] = x[0] - std::exp(std::cos(h * (x[0] + x[1])));
#pragma omp parallel for if (par) schedule(static)
      for (std::size_t i = 1; i < n - 1; ++i) {
        fx[i] = x[i] - std::exp(std::cos(h * (x[i - 1] + x[i] + x[i + 1])));
      }
      fx[n - 1] = x[n - 1] - std::exp(std::cos(h * (x[n - 2] + x[n - 1])));
      break;
    }

    case 6: {
      fx[0] = x[0] * (x[0] * x[0] + x[1] * x[1]) - 1.0;
#pragma omp parallel for if (par) schedule(static)
      for (std::size_t i = 1; i < n - 1; ++i) {
        fx[i] = x[i] * (x[i - 1] * x[i - 1] + 2.0 * x[i] * x[i] + x[i + 1] * x[i + 1]) - 1.0;
      }
      fx[n - 1] = x[n - 1] * (x[n - 2] * x[n - 2] + x[n - 1] * x[n - 1]);
      break;
    }

    case 7: {
      // O(n^2): one inner sum per component, over cached weights when present.
      const double factor = kChandrasekharC / (2.0 * dn);
      const double* delta = nodes_.data();
      const double* w = weights_.empty() ? nullptr : weights_.data();
      const double* xs = x.data();
#pragma omp parallel for if (n >= kParallelMinQuadratic) schedule(static)
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        if (w) {
          const double* row = w + i * n;
#pragma omp simd reduction(+ : sum)
          for (std::size_t j = 0; j < n; ++j) sum += row[j] * xs[j];
        } else {
          const double di = delta[i];
#pragma omp simd reduction(+ : sum)
          for (std::size_t j = 0; j < n; ++j) sum += di * xs[j] / (di + delta[j]);
        }
        fx[i] = xs[i] - 1.0 / (1.0 - factor * sum);
      }
      break;
    }

    case 8:
#pragma omp parallel for if (par) schedule(static)
      for (std::size_t i = 0; i < n - 1; ++i) {
        fx[i] = x[i] - x[i + 1] * x[i + 1] * x[i + 1] / 100.0;
      }
      fx[n - 1] = x[n - 1] - x[n - 1] * x[n - 1] * x[n - 1] / 100.0;
      break;

    case 9:
#pragma omp parallel for if (par) schedule(static)
      for (std::size_t i = 0; i < n; ++i) fx[i] = x[i] - std::sin(std::fabs(x[i] - 1.0));
      break;

    case 10:
#pragma omp parallel for if (par) schedule(static)
      for (std::size_t i = 0; i < n; ++i) fx[i] = 2.0 * x[i] - std::sin(std::fabs(x[i]));
      break;
  }
}

Problem make_problem(int id, std::size_t n) { return Problem(id, n); }

std::vector<double> initial_point(const InitialPointSpec& spec) {
  const std::size_t n = spec.n;
  if (n == 0) throw std::invalid_argument("initial point needs n >= 1");
  const double dn = static_cast<double>(n);
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double i = static_cast<double>(k + 1);
    switch (spec.id) {
      case 1: x[k] = 1.0; break;
      case 2: x[k] = 0.1; break;
      // 2^-i underflows to zero past i ~ 1074.
      case 3: x[k] = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(k + 1, 2000))); break;
      case 4: x[k] = 1.0 - i / dn; break;
      case 5: x[k] = (i - 1.0) / dn; break;
      case 6: x[k] = 1.0 / i; break;
      case 7: x[k] = (dn - i) / dn; break;
      case 8: x[k] = i / dn; break;
      case 9: x[k] = 10.0; break;
      case 10: break;
      default:
        throw std::invalid_argument("unknown initial point id " + std::to_string(spec.id));
    }
  }
  if (spec.id == 10) {
    std::mt19937_64 gen(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& v : x) {
      do {
        v = unit(gen);
      } while (v == 0.0);
    }
  }
  return x;
}

}  // namespace hybridplus
