#include "satcts/kernels.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace satcts::kernels {

namespace {

// Below this many work items the parallel versions run serially anyway.
constexpr std::int64_t kMinParallelWork = 2048;

void check_size(std::size_t got, std::int64_t want, const char* what) {
  if (static_cast<std::int64_t>(got) != want) {
    fail(ErrorKind::kDimensionMismatch, std::string(what) + ": output size mismatch");
  }
}

inline double thompson_one(const BetaPosterior& posterior, const ArmSpace& space,
                           std::uint64_t seed, StreamDomain domain, std::int64_t t,
                           std::int64_t arm) {
  Stream stream(seed, domain, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(arm));
  const auto a = static_cast<double>(posterior.alphas()[static_cast<std::size_t>(arm)]);
  const auto b = static_cast<double>(posterior.betas()[static_cast<std::size_t>(arm)]);
  return space.rate_of(arm) * stream.beta(a, b);
}

inline void index_one(const SharedCounters& counters, const ArmSpace& space, double log_t,
                      std::int64_t arm, std::span<double> lcb, std::span<double> mean) {
  const auto i = static_cast<std::size_t>(arm);
  const std::int64_t n = counters.pulls()[i];
  if (n < 1) fail(ErrorKind::kState, "index_tables: arm has no pulls (undefined radius)");
  const double psi_hat = static_cast<double>(counters.successes()[i]) / static_cast<double>(n);
  const double radius = std::sqrt(3.0 * log_t / (2.0 * static_cast<double>(n)));
  const double rate = space.rate_of(arm);
  lcb[i] = lcb_index(rate, psi_hat, radius);
  mean[i] = mean_index(rate, psi_hat);
}

inline double ucb_one(std::span<const double> psi_hat, std::span<const std::int64_t> pulls,
                      const ArmSpace& space, double log_t, std::int64_t arm) {
  const auto i = static_cast<std::size_t>(arm);
  if (pulls[i] == 0) return std::numeric_limits<double>::infinity();
  const double radius = std::sqrt(3.0 * log_t / (2.0 * static_cast<double>(pulls[i])));
  return ucb_index(space.rate_of(arm), psi_hat[i], radius);
}

// One (m, b, k) cell: psi for every rate from n_mc shared draws.
void truth_cell(const ChannelState& channel, const Codebook& codebook, const ArmSpace& space,
                std::int64_t n_mc, std::uint64_t seed, int m, int beam,
                std::span<double> psi) {
  const auto& dims = space.dims();
  const int bs = beam / dims.K;
  const int k = beam % dims.K;
  const cplx a0 = beam_gain(channel.mean_channel(m, bs), codebook.beam(bs, k));
  const double sigma = channel.sigma(m, bs);
  const double scale = channel.tx_power[static_cast<std::size_t>(bs)] /
                       channel.noise_var[static_cast<std::size_t>(m)];
  std::vector<double> thresholds(static_cast<std::size_t>(dims.R));
  for (int r = 0; r < dims.R; ++r) thresholds[static_cast<std::size_t>(r)] = snr_threshold(space.rates()[r]);

  const std::int64_t first = space.flat(m, beam, 0);
  if (sigma == 0.0) {
    const double snr = scale * std::norm(a0);
    for (int r = 0; r < dims.R; ++r) {
      psi[static_cast<std::size_t>(first + r)] = snr >= thresholds[static_cast<std::size_t>(r)] ? 1.0 : 0.0;
    }
    return;
  }
  // eps^H f ~ CN(0, sigma^2) for unit-norm f.
  const double component_std = sigma / std::sqrt(2.0);
  std::vector<std::int64_t> hits(static_cast<std::size_t>(dims.R), 0);
  Stream stream(seed, StreamDomain::kTruthTable,
                static_cast<std::uint64_t>(m) * dims.num_beams() + beam, 0);
  for (std::int64_t draw = 0; draw < n_mc; ++draw) {
    const double re = a0.real() + component_std * stream.normal();
    const double im = a0.imag() + component_std * stream.normal();
    const double snr = scale * (re * re + im * im);
    // Thresholds increase with rate: count the prefix that succeeds.
    for (int r = 0; r < dims.R && snr >= thresholds[static_cast<std::size_t>(r)]; ++r) {
      ++hits[static_cast<std::size_t>(r)];
    }
  }
  for (int r = 0; r < dims.R; ++r) {
    psi[static_cast<std::size_t>(first + r)] =
        static_cast<double>(hits[static_cast<std::size_t>(r)]) / static_cast<double>(n_mc);
  }
}

}  // namespace

void thompson_scores(const BetaPosterior& posterior, const ArmSpace& space,
                     std::uint64_t seed, StreamDomain domain, std::int64_t t,
                     std::span<double> out, Exec exec) {
  const std::int64_t arms = space.num_arms();
  check_size(out.size(), arms, "thompson_scores");
  check_size(static_cast<std::size_t>(posterior.size()), arms, "thompson_scores posterior");
  if (exec == Exec::kSerial) {
    for (std::int64_t a = 0; a < arms; ++a) {
      out[static_cast<std::size_t>(a)] = thompson_one(posterior, space, seed, domain, t, a);
    }
    return;
  }
#pragma omp parallel for schedule(static) if (arms >= kMinParallelWork)
  for (std::int64_t a = 0; a < arms; ++a) {
    out[static_cast<std::size_t>(a)] = thompson_one(posterior, space, seed, domain, t, a);
  }
}

void index_tables(const SharedCounters& counters, const ArmSpace& space, std::int64_t t,
                  std::span<double> lcb, std::span<double> mean, Exec exec) {
  const std::int64_t arms = space.num_arms();
  check_size(lcb.size(), arms, "index_tables");
  check_size(mean.size(), arms, "index_tables");
  if (t < 1) fail(ErrorKind::kInvalidArgument, "index_tables: slot must be >= 1");
  const double log_t = std::log(static_cast<double>(t));
  if (exec == Exec::kSerial) {
    for (std::int64_t a = 0; a < arms; ++a) index_one(counters, space, log_t, a, lcb, mean);
    return;
  }
  // Exceptions must not escape an OpenMP region; validate first.
  for (std::int64_t n : counters.pulls()) {
    if (n < 1) fail(ErrorKind::kState, "index_tables: arm has no pulls (undefined radius)");
  }
#pragma omp parallel for schedule(static) if (arms >= kMinParallelWork)
  for (std::int64_t a = 0; a < arms; ++a) index_one(counters, space, log_t, a, lcb, mean);
}

void ucb_scores(std::span<const double> psi_hat, std::span<const std::int64_t> pulls,
                const ArmSpace& space, std::int64_t t, std::span<double> out, Exec exec) {
  const std::int64_t arms = space.num_arms();
  check_size(out.size(), arms, "ucb_scores");
  check_size(psi_hat.size(), arms, "ucb_scores");
  check_size(pulls.size(), arms, "ucb_scores");
  if (t < 1) fail(ErrorKind::kInvalidArgument, "ucb_scores: slot must be >= 1");
  const double log_t = std::log(static_cast<double>(t));
  if (exec == Exec::kSerial) {
    for (std::int64_t a = 0; a < arms; ++a) {
      out[static_cast<std::size_t>(a)] = ucb_one(psi_hat, pulls, space, log_t, a);
    }
    return;
  }
#pragma omp parallel for schedule(static) if (arms >= kMinParallelWork)
  for (std::int64_t a = 0; a < arms; ++a) {
    out[static_cast<std::size_t>(a)] = ucb_one(psi_hat, pulls, space, log_t, a);
  }
}

void truth_probabilities(const ChannelState& channel, const Codebook& codebook,
                         const ArmSpace& space, std::int64_t n_mc, std::uint64_t seed,
                         std::span<double> psi, Exec exec) {
  check_compatible(channel, codebook, space);
  check_size(psi.size(), space.num_arms(), "truth_probabilities");
  if (n_mc < 1) fail(ErrorKind::kInvalidArgument, "truth_probabilities: N_mc must be >= 1");
  const int M = space.dims().M;
  const int beams = space.num_beams();
  const std::int64_t cells = static_cast<std::int64_t>(M) * beams;
  if (exec == Exec::kSerial) {
    for (std::int64_t c = 0; c < cells; ++c) {
      truth_cell(channel, codebook, space, n_mc, seed, static_cast<int>(c / beams),
                 static_cast<int>(c % beams), psi);
    }
    return;
  }
#pragma omp parallel for schedule(dynamic, 1) if (cells * n_mc >= kMinParallelWork)
  for (std::int64_t c = 0; c < cells; ++c) {
    truth_cell(channel, codebook, space, n_mc, seed, static_cast<int>(c / beams),
               static_cast<int>(c % beams), psi);
  }
}

}  // namespace satcts::kernels
