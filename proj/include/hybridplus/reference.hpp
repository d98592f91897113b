#pragma once

#include <span>
#include <vector>

namespace hybridplus::reference {

// Straight serial transcription of the ten residual maps, one component at a
// time with 1-based index arithmetic. Kept as the oracle for the parallel
// kernels in Problem::evaluate and as the baseline in the kernel benchmark.
std::vector<double> residual(int problem_id, std::span<const double> x);

}  // namespace hybridplus::reference
