#pragma once

// Sequential beam/rate policies behind one select -> observe contract.
//
//   SatCts  satisficing CTS: init cover, LCB gate, MEAN gate, committed
//           Thompson-sampling phases of length 2, 4, 8, ...
//   Cts     combinatorial Thompson sampling with Beta(1, 1) priors
//   Cucb    combinatorial UCB with +inf index for unpulled arms

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "satcts/core.hpp"
#include "satcts/environment.hpp"
#include "satcts/rng.hpp"

namespace satcts {

enum class Phase : std::uint8_t { kInit, kLcb, kMean, kCts, kUcb };

std::string_view to_string(Phase phase);

struct Decision {
  Assignment assignment;
  Phase phase = Phase::kCts;
  int cts_round = 0;  // SAT-CTS committed round index (1-based), 0 otherwise
  // Gate averages at selection time; NaN when the gate was not evaluated.
  double lcb_average = 0.0;
  double mean_average = 0.0;
};

enum class PolicyKind { kSatCts, kCts, kCucb };

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view name);

class Policy {
 public:
  virtual ~Policy() = default;

  // Slots are 1-based and must be requested in order, each followed by
  // exactly one observe().
  virtual Decision select(std::int64_t t) = 0;
  virtual void observe(const Assignment& assignment, std::span<const std::uint8_t> acks,
                       std::int64_t t) = 0;
  virtual PolicyKind kind() const = 0;
};

// Round j (0-based): UE m plays beam ((j / R) + m) mod (B*K) at rate j mod R.
// Covers every (ue, beam, rate) exactly once in B*K*R rounds.
std::vector<Assignment> init_cover_schedule(const ProblemDims& dims);

struct PolicyOptions {
  std::uint64_t seed = 0;
  // Stream domain for Thompson draws; defaults to the policy's own domain.
  std::uint64_t stream_domain = 0;
  Exec exec = Exec::kParallel;
};

struct SatCtsOptions {
  double tau = 0.0;
  // true: reset Beta priors at each committed phase and update them only on
  // committed slots. false: one global posterior updated on every slot.
  bool reset_priors = false;
};

class SatCts final : public Policy {
 public:
  SatCts(ArmSpace space, SatCtsOptions sat, PolicyOptions opts = {});

  Decision select(std::int64_t t) override;
  void observe(const Assignment& assignment, std::span<const std::uint8_t> acks,
               std::int64_t t) override;
  PolicyKind kind() const override { return PolicyKind::kSatCts; }

  // The post-initialization decision rule; throws kState for t <= T0.
  Decision select_learning(std::int64_t t);

  const SharedCounters& counters() const { return counters_; }
  const BetaPosterior& posterior() const { return posterior_; }
  BetaPosterior& mutable_posterior() { return posterior_; }
  int round() const { return round_; }
  std::int64_t committed_remaining() const { return remaining_; }
  const SatCtsOptions& options() const { return sat_; }

 private:
  Decision thompson_decision(std::int64_t t);

  ArmSpace space_;
  SatCtsOptions sat_;
  PolicyOptions opts_;
  std::vector<Assignment> schedule_;
  SharedCounters counters_;
  BetaPosterior posterior_;
  int round_ = 1;               // next committed round index i
  std::int64_t remaining_ = 0;  // committed steps left in the active round
  bool in_round_ = false;
  std::int64_t expect_ = 1;
  bool awaiting_observe_ = false;
  Phase last_phase_ = Phase::kInit;
  std::vector<double> scratch_a_;
  std::vector<double> scratch_b_;
};

class Cts final : public Policy {
 public:
  Cts(ArmSpace space, PolicyOptions opts = {});

  Decision select(std::int64_t t) override;
  void observe(const Assignment& assignment, std::span<const std::uint8_t> acks,
               std::int64_t t) override;
  PolicyKind kind() const override { return PolicyKind::kCts; }

  const BetaPosterior& posterior() const { return posterior_; }
  BetaPosterior& mutable_posterior() { return posterior_; }

 private:
  ArmSpace space_;
  PolicyOptions opts_;
  BetaPosterior posterior_;
  std::int64_t expect_ = 1;
  bool awaiting_observe_ = false;
  std::vector<double> scratch_;
};

class Cucb final : public Policy {
 public:
  Cucb(ArmSpace space, PolicyOptions opts = {});

  Decision select(std::int64_t t) override;
  void observe(const Assignment& assignment, std::span<const std::uint8_t> acks,
               std::int64_t t) override;
  PolicyKind kind() const override { return PolicyKind::kCucb; }

  std::span<const double> psi_hat() const { return psi_hat_; }
  std::span<const std::int64_t> pulls() const { return pulls_; }

 private:
  ArmSpace space_;
  PolicyOptions opts_;
  std::vector<std::int64_t> pulls_;
  std::vector<double> psi_hat_;  // incremental mean
  std::int64_t expect_ = 1;
  bool awaiting_observe_ = false;
  std::vector<double> scratch_;
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::kSatCts;
  SatCtsOptions sat;
};

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const ArmSpace& space,
                                    PolicyOptions opts);

}  // namespace satcts
