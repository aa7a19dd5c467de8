#pragma once

// Regret and fairness measurements. Regrets use the true success
// probabilities from a TruthTable; fairness uses realized throughput.

#include <cstdint>
#include <span>
#include <vector>

#include "satcts/core.hpp"
#include "satcts/environment.hpp"
#include "satcts/policies.hpp"

namespace satcts {

struct SlotRecord {
  std::int64_t t = 0;
  Assignment assignment;
  Feedback feedback;
  Phase phase = Phase::kCts;
  int cts_round = 0;
  double sat_regret = 0.0;
  double std_regret = 0.0;
  std::vector<double> rewards;  // per UE: rate * ack
};

struct RunTrace {
  PolicyKind policy = PolicyKind::kSatCts;
  std::uint64_t seed = 0;
  double tau = 0.0;
  std::vector<SlotRecord> slots;
};

// [tau - g(s)]_+
double per_round_satisficing_regret(const Assignment& assignment, const TruthTable& truth,
                                    const ArmSpace& space, double tau);

// g* - g(s), clamped at 0 against rounding.
double per_round_standard_regret(const Assignment& assignment, const TruthTable& truth,
                                 const ArmSpace& space);

std::vector<double> prefix_sums(std::span<const double> values);
std::vector<double> cumulative_satisficing_regret(const RunTrace& trace);
std::vector<double> cumulative_standard_regret(const RunTrace& trace);

// (sum G)^2 / (M sum G^2); all-zero G gives 1.
double jain_index(std::span<const double> throughput);

// sum ln G; -inf as soon as some G <= 0.
double sum_log_utility(std::span<const double> throughput);

// Per-slot fairness series over cumulative realized throughput.
struct FairnessSeries {
  std::vector<double> jain;
  std::vector<double> sum_log;
  std::vector<double> final_throughput;  // G_m(T)
};

FairnessSeries fairness_series(const RunTrace& trace, int M);

}  // namespace satcts
