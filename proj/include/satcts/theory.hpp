#pragma once

// Finite-time bound constants for SAT-CTS and an empirical bound checker.
//
// Gap quantities are defined on average expected throughput g(s) = (1/M) sum mu.
// Per-arm gaps need every assignment, so they are only computed within a small
// enumeration guard; larger requests fail with kExactOnly.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "satcts/core.hpp"
#include "satcts/environment.hpp"
#include "satcts/metrics.hpp"

namespace satcts {

struct EnumerationGuard {
  int max_M = 5;
  int max_beams = 8;
  int max_R = 3;

  bool admits(const ProblemDims& dims) const {
    return dims.M <= max_M && dims.num_beams() <= max_beams && dims.R <= max_R;
  }
};

struct GapProfile {
  double tau = 0.0;
  double g_star = 0.0;
  double g_min = 0.0;       // min_s g(s)
  double delta_star = 0.0;  // g* - tau
  double delta_star_nr = 0.0;  // tau - g*
  double delta_max = 0.0;   // g* - g_min
  bool per_arm = false;     // false: only the oracle-computable fields are set
  double delta_min_std = 0.0;
  std::int64_t num_assignments = 0;
  std::int64_t num_bad = 0;
  // Per flat arm. NaN where the defining set is empty.
  std::vector<double> delta_bad;   // min Delta_sat over bad s containing i
  std::vector<double> delta_norm;  // delta_bad / r_i
  std::vector<double> delta_arm;   // min Delta_s over s != s* containing i

  bool realizable() const { return delta_star > 0.0; }
};

// Exhaustive over all assignments. With require_exact (default) an over-guard
// request throws kExactOnly; otherwise only g*, g_min and the margins are
// filled, from the assignment oracle.
GapProfile gap_profile(const TruthTable& truth, const ArmSpace& space, double tau,
                       bool require_exact = true, EnumerationGuard guard = {});

struct TheoryParams {
  double delta = 0.1;
  std::optional<double> epsilon;  // default: midpoint of the valid interval
  double alpha1 = 1.0;
};

struct BoundConstants {
  double tau = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double epsilon_upper = 0.0;  // open upper end of the epsilon interval
  double alpha1 = 1.0;
  double b_cts = 0.0;
  int k_star = 0;
  int k_max = 0;
  std::int64_t num_arms = 0;
  std::int64_t T0 = 0;

  double r_init = 0.0;
  double r_conf = 0.0;
  double r_mean = 0.0;
  double r_cts = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double n0 = 0.0;

  // T*_CTS can exceed 2^64; exact decimal strings are kept next to doubles.
  double t_star = 0.0;
  std::string t_star_exact;
  double t_star_ceiling = 0.0;  // explicit closed-form upper bound
  std::string t_star_ceiling_exact;
  bool t_star_within_ceiling = false;
  int i_star = 0;

  double total() const { return r_init + r_conf + r_mean + r_cts; }
};

// Validates delta in (0, 1/4) and epsilon in (0, M d_min / (2 r_max (M^2 + 2))).
double epsilon_upper_bound(const GapProfile& profile, const ArmSpace& space);

double n0_count(double r_max, double delta_star, int M, double delta);

// Smallest integer T >= 1 with T - N0 >= (C1 ln T + C0) / delta, searched in
// 50-digit arithmetic, next to the closed-form ceiling
// ceil((2 C1 / delta) [ln(C1 / delta) + (delta N0 + C0) / C1]^+).
struct CriticalHorizon {
  double value = 0.0;
  std::string exact;
  double ceiling = 0.0;
  std::string ceiling_exact;
  bool within_ceiling = false;
  int i_star = 0;
};
CriticalHorizon critical_cts_horizon(double c1, double c0, double n0, double delta);

// Lower-level pieces exposed for tests.
double c1_constant(const GapProfile& profile, const ArmSpace& space, double epsilon);
double c0_constant(std::int64_t num_arms, int M, double epsilon, double alpha1);
double r_conf_term(std::int64_t num_arms, double tau);
double r_mean_term(const GapProfile& profile, const ArmSpace& space, double tau);
double r_cts_term(double c1, double c0, int i_star, double delta, double tau);

BoundConstants theorem1_constants(const GapProfile& profile, const ArmSpace& space,
                                  const TheoryParams& params);

// ceil(log2(max(1, T - T0 + 2)))
int cts_round_count(std::int64_t T, std::int64_t T0);

struct NonRealizableBound {
  double epsilon = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double r_trans = 0.0;
  double cts_sum = 0.0;
  int rounds = 0;
  double total() const { return r_trans + cts_sum; }
};

// Requires delta_star_nr > 0. The CTS-round sum is evaluated at horizon T.
NonRealizableBound theorem2_constants(const GapProfile& profile, const ArmSpace& space,
                                      const TheoryParams& params, std::int64_t T);

enum class BoundMode { kRealizable, kNonRealizable };

struct BoundCheck {
  BoundMode mode = BoundMode::kRealizable;
  int runs = 0;
  double measured = 0.0;  // mean final cumulative regret over runs
  double bound = 0.0;
  bool pass = false;
};

// Realizable mode compares satisficing regret with `bound`; non-realizable
// mode compares standard regret.
BoundCheck bound_check(const std::vector<RunTrace>& traces, const GapProfile& profile,
                       double bound, BoundMode mode);

// Replays a trace against the truth table: good-event and gate audits plus
// the structural checks on phases and counters.
struct TraceAudit {
  std::int64_t slots = 0;
  std::int64_t checked_slots = 0;      // t > T0
  std::int64_t good_event_failures = 0;
  std::int64_t lcb_above_mu = 0;       // on good slots, LCB_i(t) > mu_i
  std::int64_t gated_lcb_bad = 0;      // on good slots, LCB play in S_bad
  std::int64_t gated_lcb_replay_failures = 0;  // Avg(LCB) < tau on replay
  std::int64_t gated_mean_replay_failures = 0;
  std::int64_t successes_exceed_pulls = 0;
  bool init_cover_exact = true;  // every base arm once in the first T0 slots
  bool phase_lengths_ok = true;  // committed rounds 1, 2, ... of length min(2^i, T-t+1)
  std::vector<std::int64_t> phase_lengths;
  std::string first_problem;

  bool structural_ok() const {
    return init_cover_exact && phase_lengths_ok && gated_lcb_replay_failures == 0 &&
           gated_mean_replay_failures == 0 && successes_exceed_pulls == 0;
  }
};

TraceAudit audit_trace(const RunTrace& trace, const TruthTable& truth, const ArmSpace& space);

// sum_{t=from}^{to} 2 |A| / t^2
double good_event_budget(std::int64_t num_arms, std::int64_t from, std::int64_t to);

// Structured text and (name, value) CSV rows. `head` and `tail` rows are
// placed before and after the computed ones.
using ReportRows = std::vector<std::pair<std::string, std::string>>;
std::string format_report(const GapProfile& profile, const BoundConstants* realizable,
                          const NonRealizableBound* nonrealizable, const BoundCheck* check,
                          const ReportRows& head = {}, const ReportRows& tail = {});
std::string format_constants_csv(const GapProfile& profile, const BoundConstants* realizable,
                                 const NonRealizableBound* nonrealizable,
                                 const BoundCheck* check, const ReportRows& head = {},
                                 const ReportRows& tail = {});

}  // namespace satcts
