#include "satcts/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "satcts/assignment.hpp"
#include "satcts/format.hpp"

namespace satcts {

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Enumerator {
  const TruthTable& truth;
  const ArmSpace& space;
  std::vector<int> beam_of;
  std::vector<int> rate_of;
  std::vector<char> used;

  template <typename Leaf>
  void walk(int m, double sum, Leaf&& leaf) {
    const auto& dims = space.dims();
    if (m == dims.M) {
      leaf(sum / dims.M);
      return;
    }
    for (int beam = 0; beam < dims.num_beams(); ++beam) {
      if (used[static_cast<std::size_t>(beam)]) continue;
      used[static_cast<std::size_t>(beam)] = 1;
      beam_of[static_cast<std::size_t>(m)] = beam;
      for (int r = 0; r < dims.R; ++r) {
        rate_of[static_cast<std::size_t>(m)] = r;
        walk(m + 1, sum + truth.mu[static_cast<std::size_t>(space.flat(m, beam, r))], leaf);
      }
      used[static_cast<std::size_t>(beam)] = 0;
    }
  }

  bool is_s_star() const {
    for (int m = 0; m < space.dims().M; ++m) {
      const auto& c = truth.s_star.choices[static_cast<std::size_t>(m)];
      if (c.beam != beam_of[static_cast<std::size_t>(m)] ||
          c.rate_idx != rate_of[static_cast<std::size_t>(m)]) {
        return false;
      }
    }
    return true;
  }
};

void min_into(double& slot, double value) {
  if (std::isnan(slot) || value < slot) slot = value;
}

// x is integral here; print it without a fractional part.
std::string big_to_string(const big& x) {
  return x.convert_to<boost::multiprecision::cpp_int>().str();
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.25)) {
    fail(ErrorKind::kInvalidArgument, "delta must lie in (0, 1/4), got " + format_number(delta));
  }
}

}  // namespace

GapProfile gap_profile(const TruthTable& truth, const ArmSpace& space, double tau,
                       bool require_exact, EnumerationGuard guard) {
  const auto& dims = space.dims();
  if (static_cast<std::int64_t>(truth.mu.size()) != space.num_arms()) {
    fail(ErrorKind::kDimensionMismatch, "gap_profile: truth table does not match the arm space");
  }
  if (!(tau >= 0.0)) fail(ErrorKind::kInvalidArgument, "gap_profile: tau must be >= 0");
  GapProfile p;
  p.tau = tau;
  p.g_star = truth.g_star;
  p.delta_star = p.g_star - tau;
  p.delta_star_nr = tau - p.g_star;

  if (!guard.admits(dims)) {
    if (require_exact) {
      fail(ErrorKind::kExactOnly,
           "per-arm gaps need exhaustive enumeration; limited to M <= " +
               std::to_string(guard.max_M) + ", B*K <= " + std::to_string(guard.max_beams) +
               ", R <= " + std::to_string(guard.max_R));
    }
    std::vector<double> neg(truth.mu.size());
    std::transform(truth.mu.begin(), truth.mu.end(), neg.begin(), [](double x) { return -x; });
    p.g_min = truth.average_throughput(best_assignment(neg, space), space);
    p.delta_max = p.g_star - p.g_min;
    return p;
  }

  const auto arms = static_cast<std::size_t>(space.num_arms());
  p.per_arm = true;
  p.delta_bad.assign(arms, kNaN);
  p.delta_norm.assign(arms, kNaN);
  p.delta_arm.assign(arms, kNaN);
  p.delta_min_std = kNaN;
  p.g_min = std::numeric_limits<double>::infinity();

  Enumerator e{truth, space, std::vector<int>(static_cast<std::size_t>(dims.M)),
               std::vector<int>(static_cast<std::size_t>(dims.M)),
               std::vector<char>(static_cast<std::size_t>(dims.num_beams()), 0)};
  e.walk(0, 0.0, [&](double g) {
    ++p.num_assignments;
    p.g_min = std::min(p.g_min, g);
    const bool optimal = e.is_s_star();
    const bool bad = g < tau;
    if (bad) ++p.num_bad;
    const double gap = p.g_star - g;
    if (!optimal) min_into(p.delta_min_std, gap);
    for (int m = 0; m < dims.M; ++m) {
      const auto arm = static_cast<std::size_t>(
          space.flat(m, e.beam_of[static_cast<std::size_t>(m)], e.rate_of[static_cast<std::size_t>(m)]));
      if (!optimal) min_into(p.delta_arm[arm], gap);
      if (bad) min_into(p.delta_bad[arm], tau - g);
    }
  });
  p.delta_max = p.g_star - p.g_min;
  for (std::size_t a = 0; a < arms; ++a) {
    if (!std::isnan(p.delta_bad[a])) {
      p.delta_norm[a] = p.delta_bad[a] / space.rate_of(static_cast<std::int64_t>(a));
    }
  }
  return p;
}

double epsilon_upper_bound(const GapProfile& profile, const ArmSpace& space) {
  if (!profile.per_arm) fail(ErrorKind::kExactOnly, "epsilon interval needs exact gaps");
  if (!(profile.delta_min_std > 0.0)) {
    fail(ErrorKind::kInvalidArgument,
         "the optimal assignment is not unique (minimum standard gap is 0); epsilon interval is empty");
  }
  const int M = space.dims().M;
  return M * profile.delta_min_std / (2.0 * space.rates().max() * (static_cast<double>(M) * M + 2.0));
}

double n0_count(double r_max, double delta_star, int M, double delta) {
  check_delta(delta);
  if (!(delta_star > 0.0)) fail(ErrorKind::kInvalidArgument, "N0 needs a positive realizability margin");
  const double ratio = r_max * r_max / (2.0 * delta_star * delta_star);
  return std::ceil(ratio * std::log(M * (1.0 + ratio) / delta));
}

CriticalHorizon critical_cts_horizon(double c1, double c0, double n0, double delta) {
  check_delta(delta);
  if (c1 < 0.0 || c0 < 0.0 || n0 < 0.0) {
    fail(ErrorKind::kInvalidArgument, "critical horizon: constants must be non-negative");
  }
  const big C1(c1), C0(c0), N0(n0), d(delta);
  auto slack = [&](const big& T) { return T - N0 - (C1 * boost::multiprecision::log(T) + C0) / d; };

  CriticalHorizon h;
  big answer;
  if (slack(big(1)) >= 0) {
    answer = 1;
  } else {
    // The slack falls until T = C1/delta and rises after it, so it is
    // negative on [1, lo] and monotone on [lo, inf).
    big lo = boost::multiprecision::floor(C1 / d);
    if (lo < 1) lo = 1;
    big hi = lo * 2;
    while (slack(hi) < 0) hi *= 2;
    while (hi - lo > 1) {
      const big mid = boost::multiprecision::floor((lo + hi) / 2);
      if (slack(mid) >= 0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    answer = hi;
  }
  h.value = static_cast<double>(answer);
  h.exact = big_to_string(answer);

  big ceiling;
  if (C1 > 0) {
    big inner = boost::multiprecision::log(C1 / d) + (d * N0 + C0) / C1;
    if (inner < 0) inner = 0;
    ceiling = boost::multiprecision::ceil(2 * C1 / d * inner);
  } else {
    // C1 -> 0 limit of the closed form.
    ceiling = boost::multiprecision::ceil(2 * (N0 + C0 / d));
  }
  h.ceiling = static_cast<double>(ceiling);
  h.ceiling_exact = big_to_string(ceiling);
  h.within_ceiling = answer <= ceiling;

  int i = 0;
  big pow2 = 1;
  while (pow2 < answer) {
    pow2 *= 2;
    ++i;
  }
  h.i_star = i;
  return h;
}

double c1_constant(const GapProfile& profile, const ArmSpace& space, double epsilon) {
  if (!profile.per_arm) fail(ErrorKind::kExactOnly, "C1 needs exact per-arm gaps");
  const int M = space.dims().M;
  const double b_cts = space.rates().max() / M;
  const double shift = 2.0 * b_cts * (static_cast<double>(M) * M + 2.0) * epsilon;
  double c1 = 0.0;
  for (double gap : profile.delta_arm) {
    if (std::isnan(gap)) continue;
    const double denom = gap - shift;
    if (!(denom > 0.0)) fail(ErrorKind::kInvalidArgument, "C1: epsilon outside its valid interval");
    c1 += 8.0 * b_cts * b_cts * M * M / (denom * denom);
  }
  return c1;
}

double c0_constant(std::int64_t num_arms, int M, double epsilon, double alpha1) {
  const double eps2 = epsilon * epsilon;
  const auto A = static_cast<double>(num_arms);
  return A * M * M / eps2 + 3.0 * A +
         alpha1 * (8.0 / eps2) * std::pow(4.0 / eps2 + 1.0, M) * std::log(M / eps2);
}

double r_conf_term(std::int64_t num_arms, double tau) {
  return std::numbers::pi * std::numbers::pi / 3.0 * static_cast<double>(num_arms) * tau;
}

double r_mean_term(const GapProfile& profile, const ArmSpace& space, double tau) {
  if (!profile.per_arm) fail(ErrorKind::kExactOnly, "R_MEAN needs exact per-arm gaps");
  double sum = 0.0;
  for (std::size_t a = 0; a < profile.delta_bad.size(); ++a) {
    const double gap = profile.delta_bad[a];
    if (std::isnan(gap)) continue;
    const double r = space.rate_of(static_cast<std::int64_t>(a));
    sum += r * r / (2.0 * gap * gap);
  }
  return tau * sum;
}

double r_cts_term(double c1, double c0, int i_star, double delta, double tau) {
  const double ln2 = std::numbers::ln2;
  const double i = i_star;
  const double q = 1.0 - 2.0 * delta;
  return tau * (c1 * ln2 / 2.0 * i * i + c0 * i + (c1 * i * ln2 + c0) / q +
                2.0 * c1 * delta * ln2 / (q * q));
}

BoundConstants theorem1_constants(const GapProfile& profile, const ArmSpace& space,
                                  const TheoryParams& params) {
  check_delta(params.delta);
  if (!profile.realizable()) {
    fail(ErrorKind::kInvalidArgument, "Theorem 1 constants need a realizable target (g* > tau)");
  }
  const auto& dims = space.dims();
  BoundConstants c;
  c.tau = profile.tau;
  c.delta = params.delta;
  c.alpha1 = params.alpha1;
  c.num_arms = space.num_arms();
  c.T0 = dims.T0;
  c.k_star = dims.M;
  c.k_max = dims.M;
  c.b_cts = space.rates().max() / dims.M;
  c.epsilon_upper = epsilon_upper_bound(profile, space);
  c.epsilon = params.epsilon.value_or(c.epsilon_upper / 2.0);
  if (!(c.epsilon > 0.0 && c.epsilon < c.epsilon_upper)) {
    fail(ErrorKind::kInvalidArgument, "epsilon must lie in (0, " + format_number(c.epsilon_upper) +
                                          "), got " + format_number(c.epsilon));
  }
  c.r_init = static_cast<double>(dims.T0) * c.tau;
  c.r_conf = r_conf_term(c.num_arms, c.tau);
  c.r_mean = r_mean_term(profile, space, c.tau);
  c.c1 = c1_constant(profile, space, c.epsilon);
  c.c0 = c0_constant(c.num_arms, dims.M, c.epsilon, c.alpha1);
  c.n0 = n0_count(space.rates().max(), profile.delta_star, dims.M, c.delta);
  const CriticalHorizon h = critical_cts_horizon(c.c1, c.c0, c.n0, c.delta);
  c.t_star = h.value;
  c.t_star_exact = h.exact;
  c.t_star_ceiling = h.ceiling;
  c.t_star_ceiling_exact = h.ceiling_exact;
  c.t_star_within_ceiling = h.within_ceiling;
  c.i_star = h.i_star;
  c.r_cts = r_cts_term(c.c1, c.c0, c.i_star, c.delta, c.tau);
  return c;
}

int cts_round_count(std::int64_t T, std::int64_t T0) {
  const std::int64_t x = std::max<std::int64_t>(1, T - T0 + 2);
  // ceil(log2 x) for x >= 1
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(x - 1)));
}

NonRealizableBound theorem2_constants(const GapProfile& profile, const ArmSpace& space,
                                      const TheoryParams& params, std::int64_t T) {
  if (!(profile.delta_star_nr > 0.0)) {
    fail(ErrorKind::kInvalidArgument, "Theorem 2 constants need a non-realizable target (tau > g*)");
  }
  if (!profile.per_arm) fail(ErrorKind::kExactOnly, "Theorem 2 constants need exact per-arm gaps");
  check_delta(params.delta);
  NonRealizableBound b;
  const double upper = epsilon_upper_bound(profile, space);
  b.epsilon = params.epsilon.value_or(upper / 2.0);
  if (!(b.epsilon > 0.0 && b.epsilon < upper)) {
    fail(ErrorKind::kInvalidArgument,
         "epsilon must lie in (0, " + format_number(upper) + "), got " + format_number(b.epsilon));
  }
  b.c1 = c1_constant(profile, space, b.epsilon);
  b.c0 = c0_constant(space.num_arms(), space.dims().M, b.epsilon, params.alpha1);

  double arm_sum = 0.0;
  for (std::int64_t a = 0; a < space.num_arms(); ++a) {
    const double r = space.rate_of(a);
    arm_sum += r * r / (2.0 * profile.delta_star_nr * profile.delta_star_nr);
  }
  b.r_trans = profile.delta_max *
              (static_cast<double>(space.dims().T0) + r_conf_term(space.num_arms(), 1.0) + arm_sum);
  b.rounds = cts_round_count(T, space.dims().T0);
  for (int j = 1; j <= b.rounds; ++j) {
    b.cts_sum += profile.delta_max * (b.c1 * j * std::numbers::ln2 + b.c0);
  }
  return b;
}

BoundCheck bound_check(const std::vector<RunTrace>& traces, const GapProfile& profile,
                       double bound, BoundMode mode) {
  if (traces.empty()) fail(ErrorKind::kInvalidArgument, "bound_check: no traces");
  if (mode == BoundMode::kRealizable && !profile.realizable()) {
    fail(ErrorKind::kInvalidArgument, "bound_check: realizable mode on a non-realizable profile");
  }
  if (mode == BoundMode::kNonRealizable && !(profile.delta_star_nr > 0.0)) {
    fail(ErrorKind::kInvalidArgument, "bound_check: non-realizable mode on a realizable profile");
  }
  BoundCheck c;
  c.mode = mode;
  c.bound = bound;
  c.runs = static_cast<int>(traces.size());
  double total = 0.0;
  for (const auto& trace : traces) {
    double run = 0.0;
    for (const auto& s : trace.slots) {
      run += mode == BoundMode::kRealizable ? s.sat_regret : s.std_regret;
    }
    total += run;
  }
  c.measured = total / static_cast<double>(traces.size());
  c.pass = c.measured <= c.bound;
  return c;
}

double good_event_budget(std::int64_t num_arms, std::int64_t from, std::int64_t to) {
  double sum = 0.0;
  for (std::int64_t t = std::max<std::int64_t>(from, 1); t <= to; ++t) {
    const auto x = static_cast<double>(t);
    sum += 2.0 * static_cast<double>(num_arms) / (x * x);
  }
  return sum;
}

TraceAudit audit_trace(const RunTrace& trace, const TruthTable& truth, const ArmSpace& space) {
  const auto& dims = space.dims();
  const std::int64_t arms = space.num_arms();
  const auto horizon = static_cast<std::int64_t>(trace.slots.size());
  TraceAudit audit;
  audit.slots = horizon;
  auto note = [&](const std::string& what) {
    if (audit.first_problem.empty()) audit.first_problem = what;
  };

  SharedCounters counters(arms);
  std::vector<double> lcb(static_cast<std::size_t>(arms));
  std::vector<double> mean(static_cast<std::size_t>(arms));
  std::vector<int> init_hits(static_cast<std::size_t>(arms), 0);

  int expected_round = 1;
  std::int64_t round_len = 0;
  int current_round = 0;
  std::int64_t round_start = 0;
  auto close_round = [&]() {
    if (current_round == 0) return;
    const std::int64_t full = current_round >= 62 ? std::numeric_limits<std::int64_t>::max()
                                                  : (std::int64_t{1} << current_round);
    const std::int64_t want = std::min(full, horizon - round_start + 1);
    audit.phase_lengths.push_back(round_len);
    if (round_len != want) {
      audit.phase_lengths_ok = false;
      note("committed round " + std::to_string(current_round) + " has length " +
           std::to_string(round_len) + ", expected " + std::to_string(want));
    }
    current_round = 0;
  };

  for (std::int64_t idx = 0; idx < horizon; ++idx) {
    const auto& rec = trace.slots[static_cast<std::size_t>(idx)];
    const std::int64_t t = idx + 1;
    if (rec.t != t) fail(ErrorKind::kInvalidArgument, "audit_trace: slots out of order");
    const auto played = played_arms(rec.assignment, space);

    if (trace.policy == PolicyKind::kSatCts) {
      if (t <= dims.T0) {
        if (rec.phase != Phase::kInit) {
          audit.init_cover_exact = false;
          note("slot " + std::to_string(t) + " inside the init window is not INIT");
        }
        for (auto a : played) ++init_hits[static_cast<std::size_t>(a)];
      } else if (rec.phase == Phase::kInit) {
        audit.init_cover_exact = false;
        note("INIT slot after T0");
      }
      if (rec.phase == Phase::kCts) {
        if (rec.cts_round != current_round) {
          close_round();
          if (rec.cts_round != expected_round) {
            audit.phase_lengths_ok = false;
            note("committed round " + std::to_string(rec.cts_round) + " out of sequence");
          }
          current_round = rec.cts_round;
          expected_round = rec.cts_round + 1;
          round_start = t;
          round_len = 0;
        }
        ++round_len;
      } else {
        close_round();
      }
    }

    bool all_pulled = true;
    for (std::int64_t n : counters.pulls()) all_pulled = all_pulled && n > 0;
    if (t > dims.T0 && all_pulled) {
      ++audit.checked_slots;
      const double log_t = std::log(static_cast<double>(t));
      bool good = true;
      for (std::int64_t a = 0; a < arms; ++a) {
        const auto i = static_cast<std::size_t>(a);
        const auto n = static_cast<double>(counters.pulls()[i]);
        const double psi_hat = static_cast<double>(counters.successes()[i]) / n;
        const double radius = std::sqrt(3.0 * log_t / (2.0 * n));
        lcb[i] = lcb_index(space.rate_of(a), psi_hat, radius);
        mean[i] = mean_index(space.rate_of(a), psi_hat);
        if (std::abs(psi_hat - truth.psi[i]) > radius) good = false;
      }
      if (!good) {
        ++audit.good_event_failures;
      } else {
        for (std::int64_t a = 0; a < arms; ++a) {
          const auto i = static_cast<std::size_t>(a);
          if (lcb[i] > truth.mu[i] + 1e-12) ++audit.lcb_above_mu;
        }
        if (rec.phase == Phase::kLcb && truth.average_throughput(rec.assignment, space) < trace.tau) {
          ++audit.gated_lcb_bad;
        }
      }
      if (rec.phase == Phase::kLcb && average_score(lcb, rec.assignment, space) < trace.tau) {
        ++audit.gated_lcb_replay_failures;
        note("GATED-LCB slot " + std::to_string(t) + " fails Avg(LCB) >= tau on replay");
      }
      if (rec.phase == Phase::kMean && average_score(mean, rec.assignment, space) < trace.tau) {
        ++audit.gated_mean_replay_failures;
        note("GATED-MEAN slot " + std::to_string(t) + " fails Avg(MEAN) >= tau on replay");
      }
    } else if (rec.phase == Phase::kLcb || rec.phase == Phase::kMean) {
      ++audit.gated_lcb_replay_failures;
      note("gate fired before every arm was pulled");
    }

    if (static_cast<int>(rec.feedback.size()) != dims.M) {
      fail(ErrorKind::kDimensionMismatch, "audit_trace: feedback length != M");
    }
    for (int m = 0; m < dims.M; ++m) {
      const auto a = played[static_cast<std::size_t>(m)];
      counters.update(a, rec.feedback[static_cast<std::size_t>(m)] != 0);
      if (counters.successes(a) > counters.pulls(a)) ++audit.successes_exceed_pulls;
    }
  }
  close_round();

  if (trace.policy == PolicyKind::kSatCts) {
    if (horizon < dims.T0) audit.init_cover_exact = false;
    for (std::int64_t a = 0; a < arms && horizon >= dims.T0; ++a) {
      if (init_hits[static_cast<std::size_t>(a)] != 1) {
        audit.init_cover_exact = false;
        note("arm " + std::to_string(a) + " covered " +
             std::to_string(init_hits[static_cast<std::size_t>(a)]) + " times during init");
        break;
      }
    }
  }
  return audit;
}

namespace {

struct Rows {
  ReportRows rows;
  void add(const std::string& name, double v) { rows.emplace_back(name, format_number(v)); }
  void add(const std::string& name, const std::string& v) { rows.emplace_back(name, v); }
};

Rows collect(const GapProfile& profile, const BoundConstants* c, const NonRealizableBound* nr,
             const BoundCheck* check, const ReportRows& head) {
  Rows r{head};
  r.add("tau", profile.tau);
  r.add("g_star", profile.g_star);
  r.add("g_min", profile.g_min);
  r.add("delta_star", profile.delta_star);
  r.add("delta_star_nr", profile.delta_star_nr);
  r.add("delta_max", profile.delta_max);
  r.add("per_arm_gaps", profile.per_arm ? "exact" : "unavailable");
  if (profile.per_arm) {
    r.add("delta_min_std", profile.delta_min_std);
    r.add("num_assignments", static_cast<double>(profile.num_assignments));
    r.add("num_bad_assignments", static_cast<double>(profile.num_bad));
  }
  if (c != nullptr) {
    r.add("delta", c->delta);
    r.add("epsilon", c->epsilon);
    r.add("epsilon_upper", c->epsilon_upper);
    r.add("alpha1", c->alpha1);
    r.add("B_cts", c->b_cts);
    r.add("k_star", static_cast<double>(c->k_star));
    r.add("K_max", static_cast<double>(c->k_max));
    r.add("num_arms", static_cast<double>(c->num_arms));
    r.add("T0", static_cast<double>(c->T0));
    r.add("R_init", c->r_init);
    r.add("R_conf", c->r_conf);
    r.add("R_MEAN", c->r_mean);
    r.add("R_CTS", c->r_cts);
    r.add("C1", c->c1);
    r.add("C0", c->c0);
    r.add("N0", c->n0);
    r.add("T_star_CTS", c->t_star_exact);
    r.add("T_star_CTS_ceiling", c->t_star_ceiling_exact);
    r.add("T_star_within_ceiling", c->t_star_within_ceiling ? "true" : "false");
    r.add("i_star", static_cast<double>(c->i_star));
    r.add("bound_total", c->total());
  }
  if (nr != nullptr) {
    r.add("epsilon", nr->epsilon);
    r.add("C1", nr->c1);
    r.add("C0", nr->c0);
    r.add("R_trans_nr", nr->r_trans);
    r.add("J_T", static_cast<double>(nr->rounds));
    r.add("cts_round_sum", nr->cts_sum);
    r.add("bound_total", nr->total());
  }
  if (check != nullptr) {
    r.add("check_mode", check->mode == BoundMode::kRealizable ? "realizable" : "nonrealizable");
    r.add("check_runs", static_cast<double>(check->runs));
    r.add("check_measured", check->measured);
    r.add("check_bound", check->bound);
    r.add("check_verdict", check->pass ? "pass" : "fail");
  }
  return r;
}

}  // namespace

std::string format_report(const GapProfile& profile, const BoundConstants* realizable,
                          const NonRealizableBound* nonrealizable, const BoundCheck* check,
                          const ReportRows& head, const ReportRows& tail) {
  Rows rows = collect(profile, realizable, nonrealizable, check, head);
  rows.rows.insert(rows.rows.end(), tail.begin(), tail.end());
  std::size_t width = 0;
  for (const auto& [k, v] : rows.rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows.rows) {
    os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
  return os.str();
}

std::string format_constants_csv(const GapProfile& profile, const BoundConstants* realizable,
                                 const NonRealizableBound* nonrealizable,
                                 const BoundCheck* check, const ReportRows& head,
                                 const ReportRows& tail) {
  Rows rows = collect(profile, realizable, nonrealizable, check, head);
  rows.rows.insert(rows.rows.end(), tail.begin(), tail.end());
  std::ostringstream os;
  os << "name,value\n";
  for (const auto& [k, v] : rows.rows) {
    os << k << ',' << v << '\n';
  }
  return os.str();
}

}  // namespace satcts
