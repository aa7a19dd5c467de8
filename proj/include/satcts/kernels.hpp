#pragma once

// Data-parallel inner loops. Each kernel has a plain serial reference and an
// OpenMP version; both produce bit-identical output because every arm's
// randomness comes from its own keyed stream. The serial versions stay for
// testing and for the benchmark.

#include <cstdint>
#include <span>

#include "satcts/core.hpp"
#include "satcts/environment.hpp"
#include "satcts/rng.hpp"

namespace satcts::kernels {

// out[a] = rate(a) * Beta(A_a, B_a) draw keyed by (seed, domain, t, a).
void thompson_scores(const BetaPosterior& posterior, const ArmSpace& space,
                     std::uint64_t seed, StreamDomain domain, std::int64_t t,
                     std::span<double> out, Exec exec);

// LCB and MEAN score tables from shared counters at slot t. Requires n_a >= 1.
void index_tables(const SharedCounters& counters, const ArmSpace& space, std::int64_t t,
                  std::span<double> lcb, std::span<double> mean, Exec exec);

// CUCB scores: +inf for unpulled arms, rate * (psi_hat + c(t, n)) otherwise.
void ucb_scores(std::span<const double> psi_hat, std::span<const std::int64_t> pulls,
                const ArmSpace& space, std::int64_t t, std::span<double> out, Exec exec);

// Monte Carlo success probabilities, written per flat arm into psi.
void truth_probabilities(const ChannelState& channel, const Codebook& codebook,
                         const ArmSpace& space, std::int64_t n_mc, std::uint64_t seed,
                         std::span<double> psi, Exec exec);

}  // namespace satcts::kernels
