#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hybridplus/problems.hpp"
#include "hybridplus/solver.hpp"

namespace hybridplus {
namespace {

SolveReport run(int problem, std::size_t n, int x0, SolverConfig cfg = {}) {
  const Problem p = make_problem(problem, n);
  return solve(p, initial_point({x0, n, 1}), cfg);
}

TEST(Solve, StartingAtRootConvergesWithoutIterating) {
  const Problem p = make_problem(3, 100);
  const auto r = solve(p, std::vector<double>(100, 0.0), {});
  EXPECT_EQ(r.status, SolveStatus::Converged);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.fevals, 0u);
  EXPECT_EQ(r.final_residual_norm, 0.0);
}

TEST(Solve, LogarithmicFromOnes) {
  const auto r = run(2, 1000, 1);
  ASSERT_TRUE(r.converged());
  EXPECT_GE(r.iterations, 4u);
  EXPECT_LE(r.iterations, 8u);
  EXPECT_LE(r.final_residual_norm, 1e-6);
}

TEST(Solve, TridiagonalExponentialFromTens) {
  const auto r = run(5, 1000, 9);
  ASSERT_TRUE(r.converged());
  EXPECT_GE(r.iterations, 3u);
  EXPECT_LE(r.iterations, 7u);
}

TEST(Solve, StatusNamesRoundTrip) {
  for (auto s : {SolveStatus::Converged, SolveStatus::MaxIterations, SolveStatus::LineSearchStall,
                 SolveStatus::NumericalBreakdown, SolveStatus::TimeLimit}) {
    EXPECT_EQ(solve_status_from_string(to_string(s)), s);
  }
  EXPECT_THROW(solve_status_from_string("Done"), std::invalid_argument);
}

TEST(Solve, RejectsInvalidConfig) {
  const Problem p = make_problem(1, 10);
  const auto x0 = initial_point({1, 10});
  auto bad = [&](auto mutate) {
    SolverConfig cfg;
    mutate(cfg);
    EXPECT_THROW(solve(p, x0, cfg), std::invalid_argument);
  };
  bad([](SolverConfig& c) { c.rho = 1.0; });
  bad([](SolverConfig& c) { c.sigma = 0.0; });
  bad([](SolverConfig& c) { c.ell = 0.0; });
  bad([](SolverConfig& c) { c.u = 0.5; });
  bad([](SolverConfig& c) { c.eta_min = 0.9; });
  bad([](SolverConfig& c) { c.eta_max = 1.0; });
  bad([](SolverConfig& c) { c.omega_hat = 0.2; });
  bad([](SolverConfig& c) { c.tol = 0.0; });
  bad([](SolverConfig& c) { c.time_limit_s = -1.0; });
}

TEST(Solve, RejectsStartingPointOfWrongLength) {
  const Problem p = make_problem(1, 10);
  EXPECT_THROW(solve(p, std::vector<double>(9, 1.0), {}), std::invalid_argument);
}

TEST(Solve, NonFiniteStartIsBreakdown) {
  const Problem p = make_problem(1, 4);
  const std::vector<double> x0{1.0, std::nan(""), 1.0, 1.0};
  const auto r = solve(p, x0, {});
  EXPECT_EQ(r.status, SolveStatus::NumericalBreakdown);
  EXPECT_EQ(r.iterations, 0u);
}

TEST(Solve, LineSearchStallWhenEveryTrialBlowsUp) {
  // Finite only at the first call, so even trials that round back onto x0 fail.
  const std::vector<double> x0{1.0, 2.0};
  std::size_t calls = 0;
  auto residual = [&](std::span<const double>, std::span<double> fx) {
    const double v = calls++ == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    fx[0] = fx[1] = v;
  };
  const auto r = solve(residual, x0, {});
  EXPECT_EQ(r.status, SolveStatus::LineSearchStall);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.fevals, 2u * 61u);
  EXPECT_EQ(r.x, x0);
}

TEST(Solve, IterationLimit) {
  SolverConfig cfg;
  cfg.max_iter = 3;
  const auto r = run(6, 1000, 1, cfg);
  EXPECT_EQ(r.status, SolveStatus::MaxIterations);
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_GT(r.final_residual_norm, cfg.tol);
}

TEST(Solve, TimeLimit) {
  SolverConfig cfg;
  cfg.time_limit_s = 1e-12;
  const auto r = run(4, 1000, 1, cfg);
  EXPECT_EQ(r.status, SolveStatus::TimeLimit);
}

TEST(Solve, RepeatedRunsAreBitwiseIdentical) {
  for (int problem : {1, 4, 7, 9}) {
    SolverConfig cfg;
    cfg.max_iter = 40;
    const auto a = run(problem, 2000, 2, cfg);
    const auto b = run(problem, 2000, 2, cfg);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_EQ(a.fevals, b.fevals);
    EXPECT_EQ(a.x, b.x) << "problem " << problem;
  }
}

TEST(Solve, FevalsCountLineSearchTrials) {
  SolverConfig cfg;
  cfg.record_trace = true;
  const auto r = run(1, 1000, 9, cfg);
  ASSERT_EQ(r.trace.size(), r.iterations);
  std::size_t trials = 0;
  bool all_single = true;
  for (const auto& t : r.trace) {
    trials += t.trials;
    all_single = all_single && t.trials == 1;
  }
  EXPECT_EQ(r.fevals, trials);
  if (all_single) EXPECT_EQ(r.fevals, r.iterations);
}

// Invariants of every accepted iteration, checked on the whole desk grid at a
// small dimension plus a few large runs.
void check_trace(const SolveReport& r, const SolverConfig& cfg, const std::string& label) {
  const double q_bound = 1.0 / (1.0 - cfg.eta_max);
  double c0 = r.trace.empty() ? 0.0 : r.trace.front().C;
  double descent = 0.0;
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& t = r.trace[i];
    ASSERT_EQ(t.k, i) << label;
    ASSERT_GE(t.b_min, cfg.ell) << label;
    ASSERT_LE(t.b_max, cfg.u) << label;
    ASSERT_GE(t.beta, 0.0) << label;
    ASSERT_LE(t.f, t.C) << label << " k " << t.k;
    ASSERT_LE(t.f_next, t.rhs) << label << " k " << t.k;
    ASSERT_LE(t.C_next, t.C + t.tau) << label << " k " << t.k;
    ASSERT_LE(t.Q_next, q_bound) << label;
    ASSERT_EQ(t.tau, std::ldexp(1.0, -static_cast<int>(t.k))) << label;
    ASSERT_TRUE(t.sign == 1 || t.sign == -1) << label;
    ASSERT_GT(t.lambda, 0.0) << label;
    if (i + 1 < r.trace.size()) {
      ASSERT_EQ(r.trace[i + 1].C, t.C_next) << label;
      ASSERT_EQ(r.trace[i + 1].f, t.f_next) << label;
    }
    descent += cfg.sigma * t.lambda * t.lambda * t.dnorm * t.dnorm;
  }
  // Summing C_{k+1} <= C_k + tau_k - sigma lambda^2 |d|^2 / Q_{k+1} over k
  // bounds the accumulated step lengths.
  ASSERT_LE(descent, (c0 + 2.0) * q_bound * (1.0 + 1e-12)) << label;
  // Steps shrink toward the end of a converged run.
  const auto& tr = r.trace;
  if (r.converged() && tr.size() >= 6) {
    double tail = std::numeric_limits<double>::infinity();
    for (std::size_t i = tr.size() - 3; i < tr.size(); ++i) tail = std::min(tail, tr[i].lambda * tr[i].dnorm);
    ASSERT_LT(tail, tr.front().lambda * tr.front().dnorm) << label;
  }
}

TEST(Solve, PropertyTraceInvariantsOnSmallGrid) {
  SolverConfig cfg;
  cfg.record_trace = true;
  cfg.max_iter = 300;
  for (int problem = 1; problem <= Problem::kCount; ++problem) {
    for (int x0 = 1; x0 <= kInitialPointCount; ++x0) {
      const auto r = run(problem, 50, x0, cfg);
      check_trace(r, cfg, "P" + std::to_string(problem) + " x0^" + std::to_string(x0));
    }
  }
}

TEST(Solve, PropertyTraceInvariantsAtScale) {
  SolverConfig cfg;
  cfg.record_trace = true;
  for (int problem : {1, 3, 4, 6, 9}) {
    const auto r = run(problem, 5000, 9, cfg);
    check_trace(r, cfg, "P" + std::to_string(problem));
  }
}

}  // namespace
}  // namespace hybridplus
