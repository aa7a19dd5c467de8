#include "satcts/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace satcts {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kNonFinite: return "non-finite";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kExactOnly: return "exact-only";
    case ErrorKind::kState: return "state";
  }
  return "unknown";
}

void ProblemDims::validate() const {
  if (M < 1 || B < 1 || K < 1 || R < 1) {
    fail(ErrorKind::kInvalidArgument, "dims: M, B, K, R must all be >= 1");
  }
  if (num_beams() < M) {
    fail(ErrorKind::kInfeasible, "dims: B*K = " + std::to_string(num_beams()) +
                                     " beams cannot serve M = " + std::to_string(M) +
                                     " UEs with distinct beams");
  }
  if (T0 < 0 || T < T0) {
    fail(ErrorKind::kInvalidArgument, "dims: need T >= T0 >= 0 (T = " +
                                          std::to_string(T) +
                                          ", T0 = " + std::to_string(T0) + ")");
  }
}

RateSet::RateSet(std::vector<double> rates) : rates_(std::move(rates)) {
  if (rates_.empty()) fail(ErrorKind::kInvalidArgument, "rate set is empty");
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    if (!(rates_[i] > 0.0) || !std::isfinite(rates_[i])) {
      fail(ErrorKind::kInvalidArgument, "rates must be positive and finite");
    }
    if (i > 0 && !(rates_[i - 1] < rates_[i])) {
      fail(ErrorKind::kInvalidArgument, "rates must be strictly increasing");
    }
  }
}

ArmSpace::ArmSpace(ProblemDims dims, RateSet rates)
    : dims_(dims), rates_(std::move(rates)) {
  dims_.validate();
  if (rates_.size() != dims_.R) {
    fail(ErrorKind::kDimensionMismatch,
         "rate set has " + std::to_string(rates_.size()) + " levels but R = " +
             std::to_string(dims_.R));
  }
}

std::int64_t ArmSpace::encode(const BaseArmId& arm) const {
  if (arm.ue < 0 || arm.ue >= dims_.M || arm.bs < 0 || arm.bs >= dims_.B ||
      arm.beam < 0 || arm.beam >= dims_.K || arm.rate_idx < 0 ||
      arm.rate_idx >= dims_.R) {
    fail(ErrorKind::kInvalidArgument, "base arm index out of range");
  }
  return flat(arm.ue, arm.bs * dims_.K + arm.beam, arm.rate_idx);
}

BaseArmId ArmSpace::decode(std::int64_t flat_index) const {
  if (flat_index < 0 || flat_index >= num_arms()) {
    fail(ErrorKind::kInvalidArgument, "flat arm index out of range");
  }
  BaseArmId arm;
  arm.rate_idx = static_cast<int>(flat_index % dims_.R);
  flat_index /= dims_.R;
  arm.beam = static_cast<int>(flat_index % dims_.K);
  flat_index /= dims_.K;
  arm.bs = static_cast<int>(flat_index % dims_.B);
  arm.ue = static_cast<int>(flat_index / dims_.B);
  return arm;
}

void validate_assignment(const Assignment& assignment, const ArmSpace& space) {
  const auto& dims = space.dims();
  if (assignment.size() != dims.M) {
    fail(ErrorKind::kInvalidArgument, "assignment must have exactly one entry per UE");
  }
  std::vector<char> used(static_cast<std::size_t>(dims.num_beams()), 0);
  for (const auto& choice : assignment.choices) {
    if (choice.beam < 0 || choice.beam >= dims.num_beams() || choice.rate_idx < 0 ||
        choice.rate_idx >= dims.R) {
      fail(ErrorKind::kInvalidArgument, "assignment entry out of range");
    }
    auto& slot = used[static_cast<std::size_t>(choice.beam)];
    if (slot) fail(ErrorKind::kInvalidArgument, "assignment reuses a beam");
    slot = 1;
  }
}

std::vector<std::int64_t> played_arms(const Assignment& assignment,
                                      const ArmSpace& space) {
  std::vector<std::int64_t> arms;
  arms.reserve(assignment.choices.size());
  for (int m = 0; m < assignment.size(); ++m) {
    const auto& c = assignment.choices[static_cast<std::size_t>(m)];
    arms.push_back(space.flat(m, c.beam, c.rate_idx));
  }
  return arms;
}

double average_score(std::span<const double> scores, const Assignment& assignment,
                     const ArmSpace& space) {
  double total = 0.0;
  for (int m = 0; m < assignment.size(); ++m) {
    const auto& c = assignment.choices[static_cast<std::size_t>(m)];
    total += scores[static_cast<std::size_t>(space.flat(m, c.beam, c.rate_idx))];
  }
  return total / static_cast<double>(assignment.size());
}

std::size_t SharedCounters::check(std::int64_t arm) const {
  if (arm < 0 || arm >= size()) fail(ErrorKind::kInvalidArgument, "counter arm out of range");
  return static_cast<std::size_t>(arm);
}

double SharedCounters::empirical_mean(std::int64_t arm) const {
  const auto i = check(arm);
  return static_cast<double>(successes_[i]) / static_cast<double>(pulls_[i]);
}

void SharedCounters::update(std::int64_t arm, bool ack) {
  const auto i = check(arm);
  ++pulls_[i];
  if (ack) ++successes_[i];
}

std::size_t BetaPosterior::check(std::int64_t arm) const {
  if (arm < 0 || arm >= size()) fail(ErrorKind::kInvalidArgument, "posterior arm out of range");
  return static_cast<std::size_t>(arm);
}

void BetaPosterior::update(std::int64_t arm, bool ack) {
  const auto i = check(arm);
  if (ack) {
    ++alpha_[i];
  } else {
    ++beta_[i];
  }
}

void BetaPosterior::reset() {
  std::fill(alpha_.begin(), alpha_.end(), 1);
  std::fill(beta_.begin(), beta_.end(), 1);
}

void BetaPosterior::set(std::int64_t arm, std::int64_t alpha, std::int64_t beta) {
  const auto i = check(arm);
  if (alpha < 1 || beta < 1) fail(ErrorKind::kInvalidArgument, "Beta pseudo-counts must be >= 1");
  alpha_[i] = alpha;
  beta_[i] = beta;
}

double concentration_radius(double t, std::int64_t n) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "undefined radius: pull count n must be >= 1");
  if (!(t >= 1.0)) fail(ErrorKind::kInvalidArgument, "undefined radius: slot t must be >= 1");
  return std::sqrt(3.0 * std::log(t) / (2.0 * static_cast<double>(n)));
}

}  // namespace satcts
