#include "satcts/policies.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "satcts/assignment.hpp"
#include "satcts/kernels.hpp"

namespace satcts {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kInit: return "INIT";
    case Phase::kLcb: return "LCB";
    case Phase::kMean: return "MEAN";
    case Phase::kCts: return "CTS";
    case Phase::kUcb: return "UCB";
  }
  return "?";
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kSatCts: return "satcts";
    case PolicyKind::kCts: return "cts";
    case PolicyKind::kCucb: return "cucb";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "satcts" || name == "sat-cts" || name == "SAT-CTS") return PolicyKind::kSatCts;
  if (name == "cts" || name == "CTS") return PolicyKind::kCts;
  if (name == "cucb" || name == "CUCB") return PolicyKind::kCucb;
  fail(ErrorKind::kConfig, "unknown policy '" + std::string(name) + "' (expected satcts, cts or cucb)");
}

std::vector<Assignment> init_cover_schedule(const ProblemDims& dims) {
  dims.validate();
  const int beams = dims.num_beams();
  const int rounds = beams * dims.R;
  std::vector<Assignment> schedule(static_cast<std::size_t>(rounds));
  for (int j = 0; j < rounds; ++j) {
    auto& s = schedule[static_cast<std::size_t>(j)];
    s.choices.resize(static_cast<std::size_t>(dims.M));
    for (int m = 0; m < dims.M; ++m) {
      s.choices[static_cast<std::size_t>(m)] = ArmChoice{(j / dims.R + m) % beams, j % dims.R};
    }
  }
  return schedule;
}

namespace {

std::uint64_t default_domain(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kSatCts: return static_cast<std::uint64_t>(StreamDomain::kSatCts);
    case PolicyKind::kCts: return static_cast<std::uint64_t>(StreamDomain::kCts);
    case PolicyKind::kCucb: return static_cast<std::uint64_t>(StreamDomain::kCucb);
  }
  return 0;
}

// Shared select/observe sequencing checks.
void check_select(std::int64_t t, std::int64_t expect, bool awaiting) {
  if (awaiting) fail(ErrorKind::kState, "select called twice without observe");
  if (t != expect) {
    fail(ErrorKind::kState, "select for slot " + std::to_string(t) + ", expected slot " +
                                std::to_string(expect));
  }
}

void check_observe(const Assignment& assignment, std::span<const std::uint8_t> acks,
                   const ArmSpace& space, std::int64_t t, std::int64_t expect, bool awaiting) {
  if (!awaiting) fail(ErrorKind::kState, "observe without a preceding select");
  if (t != expect) fail(ErrorKind::kState, "observe for the wrong slot");
  if (static_cast<int>(acks.size()) != space.dims().M || assignment.size() != space.dims().M) {
    fail(ErrorKind::kInvalidArgument, "feedback length does not match M");
  }
  for (std::uint8_t x : acks) {
    if (x > 1) fail(ErrorKind::kInvalidArgument, "feedback bits must be 0 or 1");
  }
}

}  // namespace

// --- SAT-CTS ----------------------------------------------------------------

SatCts::SatCts(ArmSpace space, SatCtsOptions sat, PolicyOptions opts)
    : space_(std::move(space)),
      sat_(sat),
      opts_(opts),
      schedule_(init_cover_schedule(space_.dims())),
      counters_(space_.num_arms()),
      posterior_(space_.num_arms()),
      scratch_a_(static_cast<std::size_t>(space_.num_arms())),
      scratch_b_(static_cast<std::size_t>(space_.num_arms())) {
  if (opts_.stream_domain == 0) opts_.stream_domain = default_domain(PolicyKind::kSatCts);
  if (space_.dims().T0 != static_cast<std::int64_t>(schedule_.size())) {
    fail(ErrorKind::kInvalidArgument, "SAT-CTS needs T0 = B*K*R = " +
                                          std::to_string(schedule_.size()) + ", got " +
                                          std::to_string(space_.dims().T0));
  }
  if (!(sat_.tau >= 0.0)) fail(ErrorKind::kInvalidArgument, "tau_r must be >= 0");
}

Decision SatCts::select(std::int64_t t) {
  check_select(t, expect_, awaiting_observe_);
  Decision d;
  if (t <= space_.dims().T0) {
    d.assignment = schedule_[static_cast<std::size_t>(t - 1)];
    d.phase = Phase::kInit;
    d.lcb_average = d.mean_average = std::numeric_limits<double>::quiet_NaN();
    last_phase_ = Phase::kInit;
    awaiting_observe_ = true;
    return d;
  }
  return select_learning(t);
}

Decision SatCts::thompson_decision(std::int64_t t) {
  kernels::thompson_scores(posterior_, space_, opts_.seed,
                           static_cast<StreamDomain>(opts_.stream_domain), t, scratch_a_,
                           opts_.exec);
  Decision d;
  d.assignment = best_assignment(scratch_a_, space_);
  d.phase = Phase::kCts;
  d.cts_round = round_;
  if (--remaining_ == 0) {
    in_round_ = false;
    ++round_;
  }
  return d;
}

Decision SatCts::select_learning(std::int64_t t) {
  if (t <= space_.dims().T0) {
    fail(ErrorKind::kState, "slot " + std::to_string(t) + " belongs to the init cover schedule");
  }
  if (!awaiting_observe_) check_select(t, expect_, awaiting_observe_);
  if (t > space_.dims().T) fail(ErrorKind::kState, "slot beyond horizon T");
  awaiting_observe_ = true;

  if (in_round_) {
    Decision d = thompson_decision(t);
    d.lcb_average = d.mean_average = std::numeric_limits<double>::quiet_NaN();
    last_phase_ = Phase::kCts;
    return d;
  }

  auto& lcb = scratch_a_;
  auto& mean = scratch_b_;
  kernels::index_tables(counters_, space_, t, lcb, mean, opts_.exec);
  Decision d;
  d.mean_average = std::numeric_limits<double>::quiet_NaN();
  d.assignment = best_assignment(lcb, space_);
  d.lcb_average = average_score(lcb, d.assignment, space_);
  if (d.lcb_average >= sat_.tau) {
    d.phase = Phase::kLcb;
    last_phase_ = d.phase;
    return d;
  }
  Assignment s_mean = best_assignment(mean, space_);
  d.mean_average = average_score(mean, s_mean, space_);
  if (d.mean_average >= sat_.tau) {
    d.assignment = std::move(s_mean);
    d.phase = Phase::kMean;
    last_phase_ = d.phase;
    return d;
  }

  // Committed round: min(2^i, T - t + 1) Thompson steps without the gate.
  if (sat_.reset_priors) posterior_.reset();
  const std::int64_t full = round_ >= 62 ? std::numeric_limits<std::int64_t>::max()
                                         : (std::int64_t{1} << round_);
  remaining_ = std::min(full, space_.dims().T - t + 1);
  in_round_ = true;
  const double lcb_avg = d.lcb_average;
  const double mean_avg = d.mean_average;
  d = thompson_decision(t);
  d.lcb_average = lcb_avg;
  d.mean_average = mean_avg;
  last_phase_ = Phase::kCts;
  return d;
}

void SatCts::observe(const Assignment& assignment, std::span<const std::uint8_t> acks,
                     std::int64_t t) {
  check_observe(assignment, acks, space_, t, expect_, awaiting_observe_);
  validate_assignment(assignment, space_);
  const bool update_posterior = !sat_.reset_priors || last_phase_ == Phase::kCts;
  for (int m = 0; m < space_.dims().M; ++m) {
    const auto& c = assignment.choices[static_cast<std::size_t>(m)];
    const std::int64_t arm = space_.flat(m, c.beam, c.rate_idx);
    const bool ack = acks[static_cast<std::size_t>(m)] != 0;
    counters_.update(arm, ack);
    if (update_posterior) posterior_.update(arm, ack);
  }
  awaiting_observe_ = false;
  ++expect_;
}

// --- CTS --------------------------------------------------------------------

Cts::Cts(ArmSpace space, PolicyOptions opts)
    : space_(std::move(space)),
      opts_(opts),
      posterior_(space_.num_arms()),
      scratch_(static_cast<std::size_t>(space_.num_arms())) {
  if (opts_.stream_domain == 0) opts_.stream_domain = default_domain(PolicyKind::kCts);
}

Decision Cts::select(std::int64_t t) {
  check_select(t, expect_, awaiting_observe_);
  kernels::thompson_scores(posterior_, space_, opts_.seed,
                           static_cast<StreamDomain>(opts_.stream_domain), t, scratch_,
                           opts_.exec);
  Decision d;
  d.assignment = best_assignment(scratch_, space_);
  d.phase = Phase::kCts;
  d.lcb_average = d.mean_average = std::numeric_limits<double>::quiet_NaN();
  awaiting_observe_ = true;
  return d;
}

void Cts::observe(const Assignment& assignment, std::span<const std::uint8_t> acks,
                  std::int64_t t) {
  check_observe(assignment, acks, space_, t, expect_, awaiting_observe_);
  validate_assignment(assignment, space_);
  for (int m = 0; m < space_.dims().M; ++m) {
    const auto& c = assignment.choices[static_cast<std::size_t>(m)];
    posterior_.update(space_.flat(m, c.beam, c.rate_idx), acks[static_cast<std::size_t>(m)] != 0);
  }
  awaiting_observe_ = false;
  ++expect_;
}

// --- CUCB -------------------------------------------------------------------

Cucb::Cucb(ArmSpace space, PolicyOptions opts)
    : space_(std::move(space)),
      opts_(opts),
      pulls_(static_cast<std::size_t>(space_.num_arms()), 0),
      psi_hat_(static_cast<std::size_t>(space_.num_arms()), 0.0),
      scratch_(static_cast<std::size_t>(space_.num_arms())) {
  if (opts_.stream_domain == 0) opts_.stream_domain = default_domain(PolicyKind::kCucb);
}

Decision Cucb::select(std::int64_t t) {
  check_select(t, expect_, awaiting_observe_);
  kernels::ucb_scores(psi_hat_, pulls_, space_, t, scratch_, opts_.exec);
  Decision d;
  d.assignment = best_assignment(scratch_, space_);
  d.phase = Phase::kUcb;
  d.lcb_average = d.mean_average = std::numeric_limits<double>::quiet_NaN();
  awaiting_observe_ = true;
  return d;
}

void Cucb::observe(const Assignment& assignment, std::span<const std::uint8_t> acks,
                   std::int64_t t) {
  check_observe(assignment, acks, space_, t, expect_, awaiting_observe_);
  validate_assignment(assignment, space_);
  for (int m = 0; m < space_.dims().M; ++m) {
    const auto& c = assignment.choices[static_cast<std::size_t>(m)];
    const auto arm = static_cast<std::size_t>(space_.flat(m, c.beam, c.rate_idx));
    const double x = acks[static_cast<std::size_t>(m)] != 0 ? 1.0 : 0.0;
    ++pulls_[arm];
    psi_hat_[arm] += (x - psi_hat_[arm]) / static_cast<double>(pulls_[arm]);
  }
  awaiting_observe_ = false;
  ++expect_;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const ArmSpace& space,
                                    PolicyOptions opts) {
  switch (spec.kind) {
    case PolicyKind::kSatCts: return std::make_unique<SatCts>(space, spec.sat, opts);
    case PolicyKind::kCts: return std::make_unique<Cts>(space, opts);
    case PolicyKind::kCucb: return std::make_unique<Cucb>(space, opts);
  }
  fail(ErrorKind::kInvalidArgument, "unknown policy kind");
}

}  // namespace satcts
