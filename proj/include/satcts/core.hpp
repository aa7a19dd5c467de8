#pragma once

// Domain types shared by every module: problem dimensions, the base-arm
// index space, assignments (super arms), per-arm counters and Beta
// posteriors, and the LCB / MEAN / UCB index formulas.

#include <cstdint>
#include <span>
#include <vector>

#include "satcts/error.hpp"

namespace satcts {

struct ProblemDims {
  int M = 1;  // UEs
  int B = 1;  // base stations
  int K = 1;  // beams per BS
  int R = 1;  // rate levels
  std::int64_t T = 1;   // horizon in slots
  std::int64_t T0 = 0;  // initialization rounds

  int num_beams() const { return B * K; }
  std::int64_t num_arms() const {
    return static_cast<std::int64_t>(M) * B * K * R;
  }

  // Throws kInvalidArgument / kInfeasible when an invariant does not hold.
  void validate() const;
};

// Strictly increasing transmission rates in bits/symbol.
class RateSet {
 public:
  RateSet() = default;
  explicit RateSet(std::vector<double> rates);

  int size() const { return static_cast<int>(rates_.size()); }
  double operator[](int idx) const { return rates_[static_cast<std::size_t>(idx)]; }
  double max() const { return rates_.back(); }
  const std::vector<double>& values() const { return rates_; }

 private:
  std::vector<double> rates_;
};

struct BaseArmId {
  int ue = 0;
  int bs = 0;
  int beam = 0;
  int rate_idx = 0;

  friend bool operator==(const BaseArmId&, const BaseArmId&) = default;
};

// Flat arm index layout: row-major over (ue, bs, beam, rate_idx).
class ArmSpace {
 public:
  ArmSpace(ProblemDims dims, RateSet rates);

  const ProblemDims& dims() const { return dims_; }
  const RateSet& rates() const { return rates_; }
  std::int64_t num_arms() const { return dims_.num_arms(); }
  int num_beams() const { return dims_.num_beams(); }

  std::int64_t encode(const BaseArmId& arm) const;
  BaseArmId decode(std::int64_t flat) const;

  // Flat index of (ue, flat beam = bs*K + beam, rate_idx).
  std::int64_t flat(int ue, int beam, int rate_idx) const {
    return (static_cast<std::int64_t>(ue) * dims_.num_beams() + beam) * dims_.R +
           rate_idx;
  }
  double rate_of(std::int64_t flat) const {
    return rates_[static_cast<int>(flat % dims_.R)];
  }

 private:
  ProblemDims dims_;
  RateSet rates_;
};

struct ArmChoice {
  int beam = 0;  // flat beam index bs*K + k
  int rate_idx = 0;

  friend bool operator==(const ArmChoice&, const ArmChoice&) = default;
};

// One (beam, rate) per UE, beams pairwise distinct. Index = UE.
struct Assignment {
  std::vector<ArmChoice> choices;

  int size() const { return static_cast<int>(choices.size()); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Throws kInvalidArgument if the assignment does not belong to the space.
void validate_assignment(const Assignment& assignment, const ArmSpace& space);

std::vector<std::int64_t> played_arms(const Assignment& assignment,
                                      const ArmSpace& space);

// Avg(Score, s) = (1/M) sum_m Score over the arms of s.
double average_score(std::span<const double> scores, const Assignment& assignment,
                     const ArmSpace& space);

class SharedCounters {
 public:
  explicit SharedCounters(std::int64_t num_arms = 0)
      : pulls_(static_cast<std::size_t>(num_arms), 0),
        successes_(static_cast<std::size_t>(num_arms), 0) {}

  std::int64_t size() const { return static_cast<std::int64_t>(pulls_.size()); }
  std::int64_t pulls(std::int64_t arm) const { return pulls_[check(arm)]; }
  std::int64_t successes(std::int64_t arm) const { return successes_[check(arm)]; }

  // psi_hat = s / n; callers gate on n >= 1.
  double empirical_mean(std::int64_t arm) const;

  void update(std::int64_t arm, bool ack);

  std::span<const std::int64_t> pulls() const { return pulls_; }
  std::span<const std::int64_t> successes() const { return successes_; }

 private:
  std::size_t check(std::int64_t arm) const;

  std::vector<std::int64_t> pulls_;
  std::vector<std::int64_t> successes_;
};

// Beta(A, B) pseudo-counts, floored at Beta(1, 1).
class BetaPosterior {
 public:
  explicit BetaPosterior(std::int64_t num_arms = 0)
      : alpha_(static_cast<std::size_t>(num_arms), 1),
        beta_(static_cast<std::size_t>(num_arms), 1) {}

  std::int64_t size() const { return static_cast<std::int64_t>(alpha_.size()); }
  std::int64_t alpha(std::int64_t arm) const { return alpha_[check(arm)]; }
  std::int64_t beta(std::int64_t arm) const { return beta_[check(arm)]; }

  void update(std::int64_t arm, bool ack);
  void reset();
  // Test hook for injecting a posterior state.
  void set(std::int64_t arm, std::int64_t alpha, std::int64_t beta);

  std::span<const std::int64_t> alphas() const { return alpha_; }
  std::span<const std::int64_t> betas() const { return beta_; }

  friend bool operator==(const BetaPosterior&, const BetaPosterior&) = default;

 private:
  std::size_t check(std::int64_t arm) const;

  std::vector<std::int64_t> alpha_;
  std::vector<std::int64_t> beta_;
};

// c(t, n) = sqrt(3 ln t / (2 n)). Throws for n < 1 or t < 1.
double concentration_radius(double t, std::int64_t n);

inline double lcb_index(double rate, double psi_hat, double radius) {
  const double shifted = psi_hat - radius;
  return rate * (shifted > 0.0 ? shifted : 0.0);
}

inline double mean_index(double rate, double psi_hat) { return rate * psi_hat; }

// Deliberately unclamped: may exceed `rate`.
inline double ucb_index(double rate, double psi_hat, double radius) {
  return rate * (psi_hat + radius);
}

}  // namespace satcts
