#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "satcts/assignment.hpp"
#include "satcts/metrics.hpp"

using namespace satcts;

namespace {

// M = 1, two beams, one rate 10: mu = (5, 3).
struct Tiny {
  ArmSpace space{ProblemDims{1, 1, 2, 1, 10, 2}, RateSet({10})};
  TruthTable truth = truth_from_psi({0.5, 0.3}, space);
};

}  // namespace

TEST_CASE("per-round satisficing regret") {
  Tiny w;
  const Assignment good{{{0, 0}}}, bad{{{1, 0}}};
  CHECK(per_round_satisficing_regret(good, w.truth, w.space, 4.0) == 0.0);
  CHECK(per_round_satisficing_regret(bad, w.truth, w.space, 4.0) == doctest::Approx(1.0));
  CHECK(per_round_satisficing_regret(bad, w.truth, w.space, 0.0) == 0.0);
  CHECK(per_round_satisficing_regret(good, w.truth, w.space, 5.0) == 0.0);

  // tau = 8 with average expected throughput 6.
  const ArmSpace space(ProblemDims{2, 1, 2, 1, 10, 2}, RateSet({10}));
  const TruthTable truth = truth_from_psi({0.5, 0.1, 0.1, 0.7}, space);
  const Assignment s{{{0, 0}, {1, 0}}};
  CHECK(truth.average_throughput(s, space) == doctest::Approx(6.0));
  CHECK(per_round_satisficing_regret(s, truth, space, 8.0) == doctest::Approx(2.0));
}

TEST_CASE("per-round standard regret") {
  Tiny w;
  CHECK(per_round_standard_regret(w.truth.s_star, w.truth, w.space) == 0.0);
  CHECK(per_round_standard_regret(Assignment{{{1, 0}}}, w.truth, w.space) == doctest::Approx(2.0));

  // Never above g* - min_s g(s), checked by enumeration.
  const ArmSpace space(ProblemDims{2, 1, 3, 2, 10, 6}, RateSet({4, 9}));
  const TruthTable truth = truth_from_psi({0.9, 0.2, 0.4, 0.4, 0.7, 0.1, 0.3, 0.3, 0.8, 0.5, 0.6, 0.1}, space);
  std::vector<double> neg(truth.mu.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -truth.mu[i];
  const double g_min = truth.average_throughput(brute_force_assignment(neg, space), space);
  for (int b0 = 0; b0 < 3; ++b0) {
    for (int b1 = 0; b1 < 3; ++b1) {
      if (b0 == b1) continue;
      for (int r0 = 0; r0 < 2; ++r0) {
        for (int r1 = 0; r1 < 2; ++r1) {
          const Assignment s{{{b0, r0}, {b1, r1}}};
          const double reg = per_round_standard_regret(s, truth, space);
          CHECK(reg >= 0.0);
          CHECK(reg <= truth.g_star - g_min + 1e-12);
          // Non-realizable tau: the satisficing regret is at least tau - g*.
          CHECK(per_round_satisficing_regret(s, truth, space, truth.g_star + 0.5) >= 0.5 - 1e-12);
        }
      }
    }
  }
  CHECK(per_round_satisficing_regret(truth.s_star, truth, space, truth.g_star) == 0.0);
}

TEST_CASE("prefix sums and cumulative series") {
  CHECK(prefix_sums(std::vector<double>{}).empty());
  CHECK(prefix_sums(std::vector<double>{3.0}) == std::vector<double>{3.0});
  CHECK(prefix_sums(std::vector<double>{1, 2, 0, 4}) == std::vector<double>{1, 3, 3, 7});

  RunTrace trace;
  for (int t = 1; t <= 5; ++t) {
    SlotRecord r;
    r.t = t;
    r.sat_regret = t % 2;
    r.std_regret = 0.5 * t;
    trace.slots.push_back(r);
  }
  const auto sat = cumulative_satisficing_regret(trace);
  const auto std_reg = cumulative_standard_regret(trace);
  CHECK(sat == std::vector<double>{1, 1, 2, 2, 3});
  CHECK(std_reg.back() == doctest::Approx(7.5));
  for (std::size_t i = 1; i < sat.size(); ++i) {
    CHECK(sat[i] >= sat[i - 1]);
    CHECK(std_reg[i] >= std_reg[i - 1]);
  }
}

TEST_CASE("Jain index") {
  CHECK(jain_index(std::vector<double>{4, 4, 4}) == doctest::Approx(1.0));
  CHECK(jain_index(std::vector<double>{0, 9, 0, 0}) == doctest::Approx(0.25));
  CHECK(jain_index(std::vector<double>{1, 2, 3}) == doctest::Approx(6.0 / 7.0));
  CHECK(jain_index(std::vector<double>{0, 0}) == 1.0);
  CHECK(jain_index(std::vector<double>{1, 2, 3}) == doctest::Approx(jain_index(std::vector<double>{7, 14, 21})));
  CHECK_THROWS_AS(jain_index(std::vector<double>{1, -1}), Error);
  Stream rng(1, StreamDomain::kTest, 0, 0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> g(1 + rng() % 8);
    for (auto& x : g) x = rng.uniform() * 100;
    const double j = jain_index(g);
    CHECK(j >= 1.0 / static_cast<double>(g.size()) - 1e-12);
    CHECK(j <= 1.0 + 1e-12);
    std::vector<double> scaled = g;
    for (auto& x : scaled) x *= 3.7;
    CHECK(jain_index(scaled) == doctest::Approx(j).epsilon(1e-12));
  }
}

TEST_CASE("sum of log utilities") {
  CHECK(sum_log_utility(std::vector<double>{1, 1, 1}) == 0.0);
  CHECK(sum_log_utility(std::vector<double>{std::exp(1.0), std::exp(1.0)}) == doctest::Approx(2.0));
  CHECK(sum_log_utility(std::vector<double>{2, 4}) == doctest::Approx(std::log(8.0)));
  CHECK(sum_log_utility(std::vector<double>{2, 0}) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("fairness series follow cumulative rewards") {
  RunTrace trace;
  const std::vector<std::vector<double>> rewards{{6, 0}, {0, 0}, {6, 8}, {0, 8}};
  for (std::size_t t = 0; t < rewards.size(); ++t) {
    SlotRecord r;
    r.t = static_cast<std::int64_t>(t + 1);
    r.rewards = rewards[t];
    trace.slots.push_back(r);
  }
  const FairnessSeries f = fairness_series(trace, 2);
  REQUIRE(f.jain.size() == 4);
  CHECK(f.jain[0] == doctest::Approx(0.5));
  CHECK(f.sum_log[0] == -std::numeric_limits<double>::infinity());
  CHECK(f.jain[2] == doctest::Approx(jain_index(std::vector<double>{12, 8})));
  CHECK(f.sum_log[3] == doctest::Approx(std::log(12.0) + std::log(16.0)));
  CHECK(f.final_throughput == std::vector<double>{12, 16});
}
