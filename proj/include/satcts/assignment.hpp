#pragma once

// BestAssign: argmax over assignments with pairwise-distinct beams of the
// summed per-UE score. Rates never couple UEs, so each (UE, beam) cell is
// first reduced to its best rate, leaving an M x (B*K) rectangular
// assignment problem solved by shortest augmenting paths in O(M^2 * B*K).

#include <cstdint>
#include <span>
#include <vector>

#include "satcts/core.hpp"

namespace satcts {

struct ReducedCostMatrix {
  int rows = 0;  // M
  int cols = 0;  // B*K
  std::vector<double> values;    // row-major rows x cols, may hold +inf
  std::vector<int> rate_choice;  // argmax rate, ties -> higher rate index

  double value(int m, int beam) const {
    return values[static_cast<std::size_t>(m) * cols + beam];
  }
  int rate(int m, int beam) const {
    return rate_choice[static_cast<std::size_t>(m) * cols + beam];
  }
};

ReducedCostMatrix reduce_rates(std::span<const double> scores, const ArmSpace& space);

// Finite stand-in for +inf scores: strictly larger than any achievable total
// of finite entries, so more +inf cells always win.
double forced_exploration_value(std::span<const double> scores, const ArmSpace& space);

// Exact maximizer. Among equal-value matchings the column scan order
// (ascending flat beam index) decides. Throws kInfeasible if B*K < M.
Assignment best_assignment(std::span<const double> scores, const ArmSpace& space);

// Exhaustive reference: every injective beam map times every rate vector.
// Guarded to M <= 6 and B*K <= 8.
Assignment brute_force_assignment(std::span<const double> scores, const ArmSpace& space);

// Sum of scores over the assignment's arms, with +inf mapped exactly as the
// solvers map it.
double assignment_total(std::span<const double> scores, const Assignment& assignment,
                        const ArmSpace& space);

}  // namespace satcts
