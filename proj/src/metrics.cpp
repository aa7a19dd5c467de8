#include "satcts/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace satcts {

double per_round_satisficing_regret(const Assignment& assignment, const TruthTable& truth,
                                    const ArmSpace& space, double tau) {
  return std::max(0.0, tau - truth.average_throughput(assignment, space));
}

double per_round_standard_regret(const Assignment& assignment, const TruthTable& truth,
                                 const ArmSpace& space) {
  const double g_star = truth.average_throughput(truth.s_star, space);
  return std::max(0.0, g_star - truth.average_throughput(assignment, space));
}

std::vector<double> prefix_sums(std::span<const double> values) {
  std::vector<double> out(values.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += values[i];
    out[i] = acc;
  }
  return out;
}

std::vector<double> cumulative_satisficing_regret(const RunTrace& trace) {
  std::vector<double> v;
  v.reserve(trace.slots.size());
  for (const auto& s : trace.slots) v.push_back(s.sat_regret);
  return prefix_sums(v);
}

std::vector<double> cumulative_standard_regret(const RunTrace& trace) {
  std::vector<double> v;
  v.reserve(trace.slots.size());
  for (const auto& s : trace.slots) v.push_back(s.std_regret);
  return prefix_sums(v);
}

double jain_index(std::span<const double> throughput) {
  if (throughput.empty()) fail(ErrorKind::kInvalidArgument, "jain_index: no UEs");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double g : throughput) {
    if (g < 0.0 || !std::isfinite(g)) fail(ErrorKind::kInvalidArgument, "jain_index: bad throughput");
    sum += g;
    sum_sq += g * g;
  }
  if (sum_sq == 0.0) return 1.0;
  return sum * sum / (static_cast<double>(throughput.size()) * sum_sq);
}

double sum_log_utility(std::span<const double> throughput) {
  double acc = 0.0;
  for (double g : throughput) {
    if (!(g > 0.0)) return -std::numeric_limits<double>::infinity();
    acc += std::log(g);
  }
  return acc;
}

FairnessSeries fairness_series(const RunTrace& trace, int M) {
  FairnessSeries out;
  out.jain.reserve(trace.slots.size());
  out.sum_log.reserve(trace.slots.size());
  std::vector<double> g(static_cast<std::size_t>(M), 0.0);
  for (const auto& s : trace.slots) {
    if (static_cast<int>(s.rewards.size()) != M) {
      fail(ErrorKind::kDimensionMismatch, "fairness_series: reward vector length != M");
    }
    for (int m = 0; m < M; ++m) g[static_cast<std::size_t>(m)] += s.rewards[static_cast<std::size_t>(m)];
    out.jain.push_back(jain_index(g));
    out.sum_log.push_back(sum_log_utility(g));
  }
  out.final_throughput = g;
  return out;
}

}  // namespace satcts
