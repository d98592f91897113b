#include "hybridplus/reference.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hybridplus::reference {

std::vector<double> residual(int problem_id, std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("reference residual needs n >= 2");
  const double dn = static_cast<double>(n);
  std::vector<double> F(n);

  // X(i) is x_i with i in 1..n.
  auto X = [&](std::size_t i) { return x[i - 1]; };

  for (std::size_t i = 1; i <= n; ++i) {
    const double xi = X(i);
    double v = 0.0;
    switch (problem_id) {
      case 1:
        v = i == 1 ? std::exp(xi) - 1.0 : std::exp(xi) + xi - 1.0;
        break;
      case 2:
        v = std::log(xi + 1.0) - xi / dn;
        break;
      case 3:
        v = std::exp(xi) - 1.0;
        break;
      case 4:
        v = (static_cast<double>(i) / (dn + 1.0)) * std::exp(xi) - 1.0;
        break;
      case 5: {
        const double h = 1.0 / (dn + 1.0);
        double arg;
        if (i == 1) {
          arg = X(1) + X(2);
        } else if (i == n) {
          arg = X(n - 1) + X(n);
        } else {
          arg = X(i - 1) + X(i) + X(i + 1);
        }
        v = xi - std::exp(std::cos(h * arg));
        break;
      }
      case 6:
        if (i == 1) {
          v = X(1) * (X(1) * X(1) + X(2) * X(2)) - 1.0;
        } else if (i == n) {
          v = X(n) * (X(n - 1) * X(n - 1) + X(n) * X(n));
        } else {
          v = X(i) * (X(i - 1) * X(i - 1) + 2.0 * X(i) * X(i) + X(i + 1) * X(i + 1)) - 1.0;
        }
        break;
      case 7: {
        const double c = 0.9;
        const double di = (static_cast<double>(i) - 0.5) / dn;
        double sum = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
          const double dj = (static_cast<double>(j) - 0.5) / dn;
          sum += di * X(j) / (di + dj);
        }
        v = xi - 1.0 / (1.0 - c / (2.0 * dn) * sum);
        break;
      }
      case 8: {
        const double next = i < n ? X(i + 1) : X(n);
        v = xi - next * next * next / 100.0;
        break;
      }
      case 9:
        v = xi - std::sin(std::fabs(xi - 1.0));
        break;
      case 10:
        v = 2.0 * xi - std::sin(std::fabs(xi));
        break;
      default:
        throw std::invalid_argument("unknown problem id " + std::to_string(problem_id));
    }
    F[i - 1] = v;
  }
  return F;
}

}  // namespace hybridplus::reference
