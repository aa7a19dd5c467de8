#include "satcts/environment.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "satcts/assignment.hpp"
#include "satcts/kernels.hpp"
#include "satcts/rng.hpp"

namespace satcts {

std::vector<cplx> steering_vector(double cos_theta, int antennas, double d_over_lambda) {
  std::vector<cplx> a(static_cast<std::size_t>(antennas));
  const double phase = 2.0 * std::numbers::pi * d_over_lambda * cos_theta;
  for (int k = 0; k < antennas; ++k) {
    a[static_cast<std::size_t>(k)] = std::polar(1.0, phase * k);
  }
  return a;
}

Codebook dft_codebook(int bs_count, int antennas, int beams, double d_over_lambda) {
  if (bs_count < 1 || antennas < 1 || beams < 1) {
    fail(ErrorKind::kInvalidArgument, "dft_codebook: B, N and K must be >= 1");
  }
  Codebook cb;
  cb.B = bs_count;
  cb.K = beams;
  cb.N = antennas;
  cb.d_over_lambda = d_over_lambda;
  cb.vectors.reserve(static_cast<std::size_t>(bs_count) * beams * antennas);
  const double norm = 1.0 / std::sqrt(static_cast<double>(antennas));
  for (int b = 0; b < bs_count; ++b) {
    for (int k = 0; k < beams; ++k) {
      const double cos_theta = -1.0 + (2.0 * k + 1.0) / beams;
      for (const cplx& entry : steering_vector(cos_theta, antennas, d_over_lambda)) {
        cb.vectors.push_back(entry * norm);
      }
    }
  }
  return cb;
}

void ChannelState::validate() const {
  if (M < 1 || B < 1 || N < 1) fail(ErrorKind::kInvalidArgument, "channel: M, B, N must be >= 1");
  const auto links = static_cast<std::size_t>(M) * B;
  if (mean.size() != links * N) fail(ErrorKind::kDimensionMismatch, "channel: mean vector size");
  if (!paths.empty() && paths.size() != links) {
    fail(ErrorKind::kDimensionMismatch, "channel: path table size");
  }
  for (const auto& p : paths) {
    if (p.gains.empty() || p.gains.size() != p.aods.size()) {
      fail(ErrorKind::kInvalidArgument, "channel: every link needs L >= 1 paths");
    }
  }
  if (sigma_ch.size() != links) fail(ErrorKind::kDimensionMismatch, "channel: sigma_ch size");
  if (tx_power.size() != static_cast<std::size_t>(B)) {
    fail(ErrorKind::kDimensionMismatch, "channel: tx_power size");
  }
  if (noise_var.size() != static_cast<std::size_t>(M)) {
    fail(ErrorKind::kDimensionMismatch, "channel: noise_var size");
  }
  for (double s : sigma_ch) {
    if (!(s >= 0.0) || !std::isfinite(s)) fail(ErrorKind::kInvalidArgument, "channel: sigma_ch must be >= 0");
  }
  for (double p : tx_power) {
    if (!(p > 0.0) || !std::isfinite(p)) fail(ErrorKind::kInvalidArgument, "channel: tx_power must be > 0");
  }
  for (double v : noise_var) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::kInvalidArgument, "channel: noise_var must be > 0");
  }
  for (const cplx& h : mean) {
    if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) {
      fail(ErrorKind::kNonFinite, "channel: non-finite mean channel entry");
    }
  }
}

ChannelState synth_channel(const SynthParams& params) {
  if (params.paths < 1) fail(ErrorKind::kInvalidArgument, "synth_channel: L must be >= 1");
  if (params.M < 1 || params.B < 1 || params.N < 1) {
    fail(ErrorKind::kInvalidArgument, "synth_channel: M, B, N must be >= 1");
  }
  ChannelState ch;
  ch.M = params.M;
  ch.B = params.B;
  ch.N = params.N;
  const auto links = static_cast<std::size_t>(params.M) * params.B;
  ch.mean.assign(links * params.N, cplx{});
  ch.paths.resize(links);
  ch.sigma_ch.assign(links, 0.0);
  ch.tx_power.assign(static_cast<std::size_t>(params.B), 1.0);
  ch.noise_var.assign(static_cast<std::size_t>(params.M), 1.0);

  const double amplitude = std::sqrt(static_cast<double>(params.N) / params.paths);
  const double gain_std = params.path_gain_std / std::sqrt(2.0);
  for (std::size_t link = 0; link < links; ++link) {
    Stream stream(params.seed, StreamDomain::kChannelSynthesis, link, 0);
    auto& p = ch.paths[link];
    for (int l = 0; l < params.paths; ++l) {
      const double re = gain_std * stream.normal();
      const double im = gain_std * stream.normal();
      p.gains.emplace_back(re, im);
      p.aods.push_back(std::numbers::pi * stream.uniform());
    }
    cplx* h = ch.mean.data() + link * static_cast<std::size_t>(params.N);
    for (int l = 0; l < params.paths; ++l) {
      const auto a = steering_vector(std::cos(p.aods[static_cast<std::size_t>(l)]), params.N,
                                     params.d_over_lambda);
      for (int n = 0; n < params.N; ++n) {
        h[n] += amplitude * p.gains[static_cast<std::size_t>(l)] * a[static_cast<std::size_t>(n)];
      }
    }
  }
  return ch;
}

void set_relative_perturbation(ChannelState& channel, double relative) {
  if (!(relative >= 0.0)) fail(ErrorKind::kInvalidArgument, "relative sigma_ch must be >= 0");
  for (int m = 0; m < channel.M; ++m) {
    for (int b = 0; b < channel.B; ++b) {
      double energy = 0.0;
      for (const cplx& x : channel.mean_channel(m, b)) energy += std::norm(x);
      channel.sigma_ch[static_cast<std::size_t>(m) * channel.B + b] =
          relative * std::sqrt(energy) / std::sqrt(static_cast<double>(channel.N));
    }
  }
}

double snr_threshold(double rate) {
  if (!(rate >= 0.0)) fail(ErrorKind::kInvalidArgument, "snr_threshold: rate must be >= 0");
  return std::exp2(rate) - 1.0;
}

cplx beam_gain(std::span<const cplx> channel, std::span<const cplx> beam) {
  cplx acc{};
  for (std::size_t n = 0; n < channel.size(); ++n) acc += std::conj(channel[n]) * beam[n];
  return acc;
}

void check_compatible(const ChannelState& channel, const Codebook& codebook,
                      const ArmSpace& space) {
  const auto& d = space.dims();
  if (channel.M != d.M || channel.B != d.B || codebook.B != d.B || codebook.K != d.K ||
      codebook.N != channel.N) {
    fail(ErrorKind::kDimensionMismatch,
         "channel (M=" + std::to_string(channel.M) + ", B=" + std::to_string(channel.B) +
             ", N=" + std::to_string(channel.N) + "), codebook (B=" + std::to_string(codebook.B) +
             ", K=" + std::to_string(codebook.K) + ", N=" + std::to_string(codebook.N) +
             ") and dims (M=" + std::to_string(d.M) + ", B=" + std::to_string(d.B) +
             ", K=" + std::to_string(d.K) + ") disagree");
  }
}

Feedback step(const ChannelState& channel, const Codebook& codebook, const ArmSpace& space,
              const Assignment& assignment, std::uint64_t seed, std::int64_t t) {
  validate_assignment(assignment, space);
  const auto& d = space.dims();
  Feedback acks(static_cast<std::size_t>(d.M), 0);
  std::vector<cplx> h(static_cast<std::size_t>(channel.N));
  for (int m = 0; m < d.M; ++m) {
    const auto& choice = assignment.choices[static_cast<std::size_t>(m)];
    const int bs = choice.beam / d.K;
    const int k = choice.beam % d.K;
    const auto mean = channel.mean_channel(m, bs);
    const double component_std = channel.sigma(m, bs) / std::sqrt(2.0);
    Stream stream(seed, StreamDomain::kEnvironment, static_cast<std::uint64_t>(t),
                  static_cast<std::uint64_t>(m) * d.B + bs);
    for (int n = 0; n < channel.N; ++n) {
      const double re = component_std * stream.normal();
      const double im = component_std * stream.normal();
      h[static_cast<std::size_t>(n)] = mean[static_cast<std::size_t>(n)] + cplx(re, im);
    }
    const double snr = channel.tx_power[static_cast<std::size_t>(bs)] *
                       std::norm(beam_gain(h, codebook.beam(bs, k))) /
                       channel.noise_var[static_cast<std::size_t>(m)];
    acks[static_cast<std::size_t>(m)] =
        snr >= snr_threshold(space.rates()[choice.rate_idx]) ? 1 : 0;
  }
  return acks;
}

double TruthTable::average_throughput(const Assignment& assignment, const ArmSpace& space) const {
  return average_score(mu, assignment, space);
}

TruthTable truth_from_psi(std::vector<double> psi, const ArmSpace& space) {
  if (static_cast<std::int64_t>(psi.size()) != space.num_arms()) {
    fail(ErrorKind::kDimensionMismatch, "truth table: psi size");
  }
  TruthTable truth;
  truth.psi = std::move(psi);
  truth.mu.resize(truth.psi.size());
  for (std::size_t a = 0; a < truth.psi.size(); ++a) {
    truth.mu[a] = space.rate_of(static_cast<std::int64_t>(a)) * truth.psi[a];
  }
  truth.s_star = best_assignment(truth.mu, space);
  truth.g_star = truth.average_throughput(truth.s_star, space);
  return truth;
}

TruthTable truth_table(const ChannelState& channel, const Codebook& codebook,
                       const ArmSpace& space, std::int64_t n_mc, std::uint64_t seed,
                       Exec exec) {
  channel.validate();
  std::vector<double> psi(static_cast<std::size_t>(space.num_arms()));
  kernels::truth_probabilities(channel, codebook, space, n_mc, seed, psi, exec);
  return truth_from_psi(std::move(psi), space);
}

// --- channel dump -----------------------------------------------------------

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'A', 'T', 'B'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> bytes;
  for (int i = 0; i < 4; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(bytes.data(), 4);
}

void put_f64(std::ostream& os, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(bytes.data(), 8);
}

bool get_bytes(std::istream& is, char* out, std::size_t n) {
  is.read(out, static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(is.gcount()) == n;
}

std::uint32_t decode_u32(const unsigned char* b) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double decode_f64(const unsigned char* b) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return std::bit_cast<double>(v);
}

}  // namespace

void save_channel_dump(const std::filesystem::path& path, const ChannelState& channel) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(channel.M));
  put_u32(os, static_cast<std::uint32_t>(channel.B));
  put_u32(os, static_cast<std::uint32_t>(channel.N));
  for (const cplx& h : channel.mean) {
    put_f64(os, h.real());
    put_f64(os, h.imag());
  }
  if (!os) fail(ErrorKind::kIo, "write failed: " + path.string());
}

ChannelState load_channel_dump(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::kIo, "cannot open channel dump " + path.string());
  std::array<char, 4> magic{};
  if (!get_bytes(is, magic.data(), 4) || magic != kMagic) {
    fail(ErrorKind::kParse, "malformed header: bad magic in " + path.string());
  }
  std::array<unsigned char, 16> header{};
  if (!get_bytes(is, reinterpret_cast<char*>(header.data()), header.size())) {
    fail(ErrorKind::kParse, "malformed header: truncated in " + path.string());
  }
  const std::uint32_t version = decode_u32(header.data());
  if (version != kVersion) {
    fail(ErrorKind::kParse, "malformed header: unsupported version " + std::to_string(version));
  }
  const std::uint32_t M = decode_u32(header.data() + 4);
  const std::uint32_t B = decode_u32(header.data() + 8);
  const std::uint32_t N = decode_u32(header.data() + 12);
  if (M == 0 || B == 0 || N == 0 || M > (1u << 20) || B > (1u << 20) || N > (1u << 20)) {
    fail(ErrorKind::kParse, "malformed header: implausible dimensions");
  }
  const std::uint64_t entries = static_cast<std::uint64_t>(M) * B * N;

  ChannelState ch;
  ch.M = static_cast<int>(M);
  ch.B = static_cast<int>(B);
  ch.N = static_cast<int>(N);
  ch.mean.resize(static_cast<std::size_t>(entries));
  std::array<unsigned char, 16> buf{};
  for (std::uint64_t e = 0; e < entries; ++e) {
    if (!get_bytes(is, reinterpret_cast<char*>(buf.data()), buf.size())) {
      fail(ErrorKind::kDimensionMismatch,
           "dimension mismatch: header promises " + std::to_string(entries) +
               " complex entries, file holds " + std::to_string(e));
    }
    const double re = decode_f64(buf.data());
    const double im = decode_f64(buf.data() + 8);
    if (!std::isfinite(re) || !std::isfinite(im)) {
      fail(ErrorKind::kNonFinite, "non-finite channel entry at index " + std::to_string(e));
    }
    ch.mean[static_cast<std::size_t>(e)] = cplx(re, im);
  }
  char extra = 0;
  if (get_bytes(is, &extra, 1)) {
    fail(ErrorKind::kDimensionMismatch, "dimension mismatch: trailing bytes after channel data");
  }
  ch.sigma_ch.assign(static_cast<std::size_t>(M) * B, 0.0);
  ch.tx_power.assign(B, 1.0);
  ch.noise_var.assign(M, 1.0);
  return ch;
}

void save_channel_sidecar(const std::filesystem::path& path, const ChannelState& channel) {
  nlohmann::ordered_json j;
  j["tx_power"] = channel.tx_power;
  j["noise_var"] = channel.noise_var;
  j["sigma_ch"] = channel.sigma_ch;
  std::ofstream os(path, std::ios::trunc);
  if (!os) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
}

namespace {

std::vector<double> expand(const nlohmann::json& node, std::size_t count, const char* key) {
  if (node.is_number()) return std::vector<double>(count, node.get<double>());
  if (!node.is_array()) fail(ErrorKind::kConfig, std::string("sidecar: ") + key + " must be a number or array");
  auto values = node.get<std::vector<double>>();
  if (values.size() != count) {
    fail(ErrorKind::kDimensionMismatch, std::string("sidecar: ") + key + " has " +
                                            std::to_string(values.size()) + " entries, expected " +
                                            std::to_string(count));
  }
  return values;
}

}  // namespace

void load_channel_sidecar(const std::filesystem::path& path, ChannelState& channel) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::kIo, "cannot open sidecar " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, "sidecar " + path.string() + ": " + e.what());
  }
  const auto links = static_cast<std::size_t>(channel.M) * channel.B;
  if (j.contains("tx_power")) channel.tx_power = expand(j["tx_power"], static_cast<std::size_t>(channel.B), "tx_power");
  if (j.contains("noise_var")) channel.noise_var = expand(j["noise_var"], static_cast<std::size_t>(channel.M), "noise_var");
  if (j.contains("sigma_ch")) channel.sigma_ch = expand(j["sigma_ch"], links, "sigma_ch");
  if (j.contains("sigma_ch_rel")) set_relative_perturbation(channel, j["sigma_ch_rel"].get<double>());
  channel.validate();
}

}  // namespace satcts
