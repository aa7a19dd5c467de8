#pragma once

// Counter-based random streams.
//
// Every random draw in a run is addressed by a key (seed, domain, i, j):
// e.g. the environment perturbation for UE m towards BS b at slot t lives at
// (seed, kEnvironment, t, m*B + b), and a Thompson draw for arm a at slot t at
// (seed, policy-domain, t, a). A Stream is a SplitMix64 sequence started from
// the mixed key, so draws do not depend on evaluation order or thread count,
// and two policies run on the same seed see identical channel realizations.
//
// The variate generators (normal, gamma, beta) are implemented here rather
// than taken from <random> because the standard distributions are
// implementation-defined; traces must be byte-identical across toolchains.

#include <cstdint>

namespace satcts {

enum class StreamDomain : std::uint64_t {
  kChannelSynthesis = 1,
  kTruthTable = 2,
  kEnvironment = 3,
  kSatCts = 16,
  kCts = 17,
  kCucb = 18,
  kTest = 99,
};

struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t domain = 0;
  std::uint64_t i = 0;
  std::uint64_t j = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(const StreamKey& key);
  Stream(std::uint64_t seed, StreamDomain domain, std::uint64_t i, std::uint64_t j)
      : Stream(StreamKey{seed, static_cast<std::uint64_t>(domain), i, j}) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double normal();
  // Marsaglia-Tsang; shape > 0.
  double gamma(double shape);
  double beta(double a, double b);

 private:
  std::uint64_t state_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace satcts
