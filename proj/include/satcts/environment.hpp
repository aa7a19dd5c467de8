#pragma once

// MISO mmWave world: per-BS analog codebooks, Saleh-Valenzuela multipath
// channels, per-slot Gaussian channel perturbation, and the SNR-threshold
// ACK/NACK rule. The ACK for UE m on beam (b, k) at rate r is
//   p_b |h^H f_{b,k}|^2 / sigma_m^2 >= 2^r - 1
// with h = mean channel + i.i.d. CN(0, sigma_ch^2) entries, redrawn each slot.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "satcts/core.hpp"

namespace satcts {

using cplx = std::complex<double>;

enum class Exec { kSerial, kParallel };

// entry k = exp(j 2 pi (d/lambda) cos_theta k), k = 0..N-1
std::vector<cplx> steering_vector(double cos_theta, int antennas, double d_over_lambda);

struct Codebook {
  int B = 0;
  int K = 0;
  int N = 0;
  double d_over_lambda = 0.5;
  std::vector<cplx> vectors;  // [b][k][antenna]

  std::span<const cplx> beam(int bs, int k) const {
    return {vectors.data() + (static_cast<std::size_t>(bs) * K + k) * N,
            static_cast<std::size_t>(N)};
  }
};

// Uniform grid in cosine space, cos(theta_k) = -1 + (2k + 1)/K, normalized by
// sqrt(N). Every BS gets the same grid.
Codebook dft_codebook(int bs_count, int antennas, int beams, double d_over_lambda);

struct PathSet {
  std::vector<cplx> gains;
  std::vector<double> aods;  // radians
};

struct ChannelState {
  int M = 0;
  int B = 0;
  int N = 0;
  std::vector<cplx> mean;         // [m][b][antenna]
  std::vector<PathSet> paths;     // [m*B + b]; empty when loaded from a dump
  std::vector<double> sigma_ch;   // [m*B + b], per-entry complex std
  std::vector<double> tx_power;   // [b]
  std::vector<double> noise_var;  // [m]

  std::span<const cplx> mean_channel(int m, int bs) const {
    return {mean.data() + (static_cast<std::size_t>(m) * B + bs) * N,
            static_cast<std::size_t>(N)};
  }
  double sigma(int m, int bs) const { return sigma_ch[static_cast<std::size_t>(m) * B + bs]; }

  void validate() const;
};

struct SynthParams {
  int M = 1;
  int B = 1;
  int N = 16;
  int paths = 3;
  double d_over_lambda = 0.5;
  double path_gain_std = 1.0;  // beta ~ CN(0, path_gain_std^2)
  std::uint64_t seed = 1;
};

// h = sqrt(N / L) sum_l beta_l a(cos theta_l), beta ~ CN(0, 1), theta ~ U(0, pi).
// tx_power and noise_var default to 1, sigma_ch to 0.
ChannelState synth_channel(const SynthParams& params);

// sigma_{m,b} = relative * ||h_mean_{m,b}|| / sqrt(N).
void set_relative_perturbation(ChannelState& channel, double relative);

double snr_threshold(double rate);

// h^H f
cplx beam_gain(std::span<const cplx> channel, std::span<const cplx> beam);

// Checks that channel, codebook and arm space agree on M, B, K, N.
void check_compatible(const ChannelState& channel, const Codebook& codebook,
                      const ArmSpace& space);

using Feedback = std::vector<std::uint8_t>;

// One slot of semi-bandit feedback. Perturbations are keyed by
// (seed, t, UE, BS) so they are shared by every policy run on the seed.
Feedback step(const ChannelState& channel, const Codebook& codebook, const ArmSpace& space,
              const Assignment& assignment, std::uint64_t seed, std::int64_t t);

struct TruthTable {
  std::vector<double> psi;  // per flat arm
  std::vector<double> mu;   // rate * psi
  double g_star = 0.0;
  Assignment s_star;

  // Average expected throughput g(s).
  double average_throughput(const Assignment& assignment, const ArmSpace& space) const;
};

// Monte Carlo success probabilities: n_mc perturbation draws per (m, b, k),
// each draw tested against all R thresholds.
TruthTable truth_table(const ChannelState& channel, const Codebook& codebook,
                       const ArmSpace& space, std::int64_t n_mc, std::uint64_t seed,
                       Exec exec = Exec::kParallel);

// Builds the derived fields (mu, g*, s*) from psi.
TruthTable truth_from_psi(std::vector<double> psi, const ArmSpace& space);

// Binary dump: "SATB", u32 version = 1, u32 M, B, N, then M*B*N (f64 re, f64 im)
// little-endian in (m, b, antenna) order.
void save_channel_dump(const std::filesystem::path& path, const ChannelState& channel);
ChannelState load_channel_dump(const std::filesystem::path& path);

// JSON sidecar with tx_power, noise_var and sigma_ch.
void save_channel_sidecar(const std::filesystem::path& path, const ChannelState& channel);
void load_channel_sidecar(const std::filesystem::path& path, ChannelState& channel);

}  // namespace satcts
