#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hybridplus {

enum class EvalCost { Linear, Quadratic };

/// One of the ten benchmark residual maps F: R^n -> R^n.
///
/// A Problem is immutable once built and may be evaluated from many threads at
/// once. Componentwise kernels are OpenMP-parallel for large n; each component
/// is computed by the same expression as the serial path, so results do not
/// depend on the thread count.
class Problem {
 public:
  static constexpr int kCount = 10;

  /// Throws std::invalid_argument for an unknown id or a dimension below the
  /// structural minimum (2, or 3 for the tridiagonal problems 5 and 6).
  Problem(int id, std::size_t n);

  int id() const { return id_; }
  std::size_t dim() const { return n_; }
  const std::string& name() const { return name_; }
  std::string_view slug() const;
  EvalCost cost() const { return id_ == 7 ? EvalCost::Quadratic : EvalCost::Linear; }

  /// Writes F(x) into fx. Both spans must have length dim().
  void evaluate(std::span<const double> x, std::span<double> fx) const;
  std::vector<double> operator()(std::span<const double> x) const;

 private:
  int id_;
  std::size_t n_;
  std::string name_;
  // Problem 7 nodes delta_i = (i - 0.5) / n.
  std::vector<double> nodes_;
  // Problem 7 weights delta_i / (delta_i + delta_j), row-major, moderate n only.
  std::vector<double> weights_;
};

Problem make_problem(int id, std::size_t n);

/// Resolves "7", "chandrasekhar-h", ... to a problem id. Throws on no match.
int problem_id_from_string(std::string_view key);

std::string_view problem_slug(int id);
std::string_view problem_name(int id);

struct InitialPointSpec {
  int id = 1;
  std::size_t n = 0;
  std::uint64_t seed = 0;  // only used by id 10
};

inline constexpr int kInitialPointCount = 10;

/// Starting points x0^1 ... x0^10. Id 10 draws each component uniformly from
/// the open interval (0, 1) using a generator seeded with spec.seed.
std::vector<double> initial_point(const InitialPointSpec& spec);

}  // namespace hybridplus
