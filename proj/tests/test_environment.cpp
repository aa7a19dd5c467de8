#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "satcts/assignment.hpp"
#include "satcts/environment.hpp"
#include "satcts/rng.hpp"

using namespace satcts;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "satcts_test_environment";
  fs::create_directories(dir);
  return dir / name;
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

// Channel with one deterministic path per link: h = sqrt(N) * gain * a(cos theta).
ChannelState single_path(int M, int B, int N, double cos_theta, cplx gain) {
  ChannelState ch;
  ch.M = M;
  ch.B = B;
  ch.N = N;
  for (int m = 0; m < M; ++m) {
    for (int b = 0; b < B; ++b) {
      for (const cplx& a : steering_vector(cos_theta, N, 0.5)) ch.mean.push_back(std::sqrt(double(N)) * gain * a);
    }
  }
  ch.sigma_ch.assign(static_cast<std::size_t>(M) * B, 0.0);
  ch.tx_power.assign(static_cast<std::size_t>(B), 1.0);
  ch.noise_var.assign(static_cast<std::size_t>(M), 1.0);
  return ch;
}

}  // namespace

TEST_CASE("steering vector") {
  for (const cplx& x : steering_vector(0.0, 6, 0.5)) CHECK(std::abs(x - cplx(1, 0)) < 1e-15);
  const auto a = steering_vector(1.0, 2, 0.5);
  CHECK(std::abs(a[0] - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(a[1] - cplx(-1, 0)) < 1e-15);
  const auto p = steering_vector(0.37, 9, 0.5);
  const auto q = steering_vector(-0.37, 9, 0.5);
  for (int k = 0; k < 9; ++k) {
    CHECK(std::abs(p[static_cast<std::size_t>(k)]) == doctest::Approx(1.0));
    CHECK(std::abs(q[static_cast<std::size_t>(k)] - std::conj(p[static_cast<std::size_t>(k)])) < 1e-14);
  }
}

TEST_CASE("DFT codebook") {
  const Codebook one = dft_codebook(1, 8, 1, 0.5);
  for (const cplx& x : one.beam(0, 0)) CHECK(std::abs(x - cplx(1.0 / std::sqrt(8.0), 0)) < 1e-15);
  const Codebook cb = dft_codebook(2, 16, 8, 0.5);
  for (int b = 0; b < 2; ++b) {
    for (int k = 0; k < 8; ++k) CHECK(std::abs(norm2(cb.beam(b, k)) - 1.0) < 1e-9);
    for (int k = 0; k + 1 < 8; ++k) {
      CHECK(std::abs(beam_gain(cb.beam(b, k), cb.beam(b, k + 1))) < 1.0 - 1e-6);
    }
  }
}

TEST_CASE("SNR thresholds") {
  CHECK(snr_threshold(6) == 63);
  CHECK(snr_threshold(0) == 0);
  CHECK(snr_threshold(12) == 4095);
  CHECK(snr_threshold(8) == 255);
  CHECK_THROWS_AS(snr_threshold(-1), Error);
}

TEST_CASE("synthesized channel follows the multipath sum") {
  SynthParams sp;
  sp.M = 2;
  sp.B = 2;
  sp.N = 12;
  sp.paths = 1;
  sp.seed = 9;
  const ChannelState ch = synth_channel(sp);
  for (int m = 0; m < 2; ++m) {
    for (int b = 0; b < 2; ++b) {
      const auto& path = ch.paths[static_cast<std::size_t>(m * 2 + b)];
      REQUIRE(path.gains.size() == 1);
      const auto a = steering_vector(std::cos(path.aods[0]), 12, 0.5);
      const auto h = ch.mean_channel(m, b);
      for (int n = 0; n < 12; ++n) {
        CHECK(std::abs(h[static_cast<std::size_t>(n)] - std::sqrt(12.0) * path.gains[0] * a[static_cast<std::size_t>(n)]) < 1e-12);
      }
      CHECK(path.aods[0] >= 0.0);
      CHECK(path.aods[0] <= std::numbers::pi);
    }
  }
  // One path, matched beam: |h^H f|^2 = N |beta|^2 * N.
  const ChannelState fixed = single_path(1, 1, 8, 0.25, cplx(1, 0));
  Codebook matched;
  matched.B = 1;
  matched.K = 1;
  matched.N = 8;
  for (const cplx& a : steering_vector(0.25, 8, 0.5)) matched.vectors.push_back(a / std::sqrt(8.0));
  CHECK(std::norm(beam_gain(fixed.mean_channel(0, 0), matched.beam(0, 0))) == doctest::Approx(64.0));
}

TEST_CASE("channel energy is N^2 on average") {
  const int N = 8, L = 3, draws = 500;
  double sum = 0.0, sum_sq = 0.0;
  int count = 0;
  for (int s = 0; s < draws; ++s) {
    SynthParams sp;
    sp.M = 2;
    sp.B = 2;
    sp.N = N;
    sp.paths = L;
    sp.seed = 1000 + s;
    const ChannelState ch = synth_channel(sp);
    for (int m = 0; m < 2; ++m) {
      for (int b = 0; b < 2; ++b) {
        const double e = norm2(ch.mean_channel(m, b));
        sum += e;
        sum_sq += e * e;
        ++count;
      }
    }
  }
  const double mean = sum / count;
  const double se = std::sqrt((sum_sq / count - mean * mean) / count);
  CHECK(std::abs(mean - N * N) < 3.0 * se);
}

TEST_CASE("synthesis is deterministic under its seed") {
  SynthParams sp;
  sp.M = 3;
  sp.B = 2;
  sp.seed = 5;
  CHECK(synth_channel(sp).mean == synth_channel(sp).mean);
  SynthParams other = sp;
  other.seed = 6;
  CHECK(synth_channel(sp).mean != synth_channel(other).mean);
  CHECK_THROWS_AS(([] {
                    SynthParams bad;
                    bad.paths = 0;
                    return synth_channel(bad);
                  }()),
                  Error);
}

TEST_CASE("zero perturbation gives deterministic feedback") {
  ArmSpace space(ProblemDims{1, 1, 1, 3, 10, 3}, RateSet({6, 8, 12}));
  // |h^H f|^2 = 64 with the matched beam below; p = 2 puts SNR at 128.
  ChannelState ch = single_path(1, 1, 8, 0.0, cplx(1, 0));
  ch.tx_power = {2.0};
  const Codebook cb = dft_codebook(1, 8, 1, 0.5);  // K = 1 points at cos = 0
  for (std::int64_t t = 1; t <= 20; ++t) {
    CHECK(step(ch, cb, space, Assignment{{{0, 0}}}, 3, t)[0] == 1);  // 128 >= 63
    CHECK(step(ch, cb, space, Assignment{{{0, 1}}}, 3, t)[0] == 0);  // 128 < 255
  }
  const TruthTable truth = truth_table(ch, cb, space, 100, 1);
  CHECK(truth.psi == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(truth.mu == std::vector<double>{6.0, 0.0, 0.0});
  CHECK(truth.g_star == 6.0);
}

TEST_CASE("expected received power adds the perturbation variance") {
  // E|(h + e)^H f|^2 = |h^H f|^2 + sigma^2 for unit-norm f.
  ChannelState ch = single_path(1, 1, 8, 0.3, cplx(0.6, 0.2));
  ch.sigma_ch = {0.9};
  const Codebook cb = dft_codebook(1, 8, 4, 0.5);
  const double base = std::norm(beam_gain(ch.mean_channel(0, 0), cb.beam(0, 2)));
  const int n = 200000;
  double s = 0.0, ss = 0.0;
  std::vector<cplx> h(8);
  for (int t = 0; t < n; ++t) {
    Stream rng(17, StreamDomain::kTest, static_cast<std::uint64_t>(t), 0);
    for (int k = 0; k < 8; ++k) {
      h[static_cast<std::size_t>(k)] = ch.mean[static_cast<std::size_t>(k)] +
                                        cplx(0.9 / std::sqrt(2.0) * rng.normal(), 0.9 / std::sqrt(2.0) * rng.normal());
    }
    const double rss = std::norm(beam_gain(h, cb.beam(0, 2)));
    s += rss;
    ss += rss * rss;
  }
  const double mean = s / n;
  const double se = std::sqrt((ss / n - mean * mean) / n);
  CHECK(std::abs(mean - (base + 0.81)) < 3.0 * se);
}

TEST_CASE("truth table invariants") {
  SynthParams sp;
  sp.M = 2;
  sp.B = 2;
  sp.N = 16;
  sp.seed = 3;
  ChannelState ch = synth_channel(sp);
  ch.tx_power = {40.0, 40.0};
  set_relative_perturbation(ch, 0.6);
  ArmSpace space(ProblemDims{2, 2, 4, 3, 100, 24}, RateSet({6, 8, 12}));
  const Codebook cb = dft_codebook(2, 16, 4, 0.5);
  const TruthTable truth = truth_table(ch, cb, space, 20000, 8);
  for (int m = 0; m < 2; ++m) {
    for (int beam = 0; beam < 8; ++beam) {
      for (int r = 0; r + 1 < 3; ++r) {
        CHECK(truth.psi[static_cast<std::size_t>(space.flat(m, beam, r + 1))] <=
              truth.psi[static_cast<std::size_t>(space.flat(m, beam, r))]);
      }
    }
  }
  for (std::size_t a = 0; a < truth.psi.size(); ++a) {
    CHECK(truth.psi[a] >= 0.0);
    CHECK(truth.psi[a] <= 1.0);
    CHECK(truth.mu[a] == space.rate_of(static_cast<std::int64_t>(a)) * truth.psi[a]);
  }
  CHECK(truth.g_star == doctest::Approx(assignment_total(truth.mu, brute_force_assignment(truth.mu, space), space) / 2));
  Stream rng(4, StreamDomain::kTest, 0, 0);
  for (int i = 0; i < 100; ++i) {
    const int b0 = static_cast<int>(rng() % 8);
    int b1 = static_cast<int>(rng() % 7);
    if (b1 >= b0) ++b1;
    const Assignment s{{{b0, static_cast<int>(rng() % 3)}, {b1, static_cast<int>(rng() % 3)}}};
    CHECK(truth.g_star >= truth.average_throughput(s, space));
  }
  // Same inputs, same table; serial and parallel agree bit for bit.
  CHECK(truth_table(ch, cb, space, 20000, 8, Exec::kSerial).psi == truth.psi);
}

TEST_CASE("Monte Carlo error shrinks like 1/sqrt(N_mc)") {
  SynthParams sp;
  sp.N = 8;
  sp.seed = 21;
  ChannelState ch = synth_channel(sp);
  ch.tx_power = {30.0};
  set_relative_perturbation(ch, 1.0);
  ArmSpace space(ProblemDims{1, 1, 4, 1, 10, 4}, RateSet({6}));
  const Codebook cb = dft_codebook(1, 8, 4, 0.5);
  const TruthTable ref = truth_table(ch, cb, space, 400000, 999);
  int arm = -1;
  for (int a = 0; a < 4; ++a) {
    if (ref.psi[static_cast<std::size_t>(a)] > 0.2 && ref.psi[static_cast<std::size_t>(a)] < 0.8) arm = a;
  }
  REQUIRE(arm >= 0);
  auto spread = [&](std::int64_t n_mc) {
    double s = 0.0, ss = 0.0;
    const int reps = 300;
    for (int r = 0; r < reps; ++r) {
      const double x = truth_table(ch, cb, space, n_mc, 5000 + r).psi[static_cast<std::size_t>(arm)];
      s += x;
      ss += x * x;
    }
    const double mean = s / reps;
    return std::sqrt(ss / reps - mean * mean);
  };
  const double ratio = spread(2000) / spread(1000);
  CHECK(ratio > 0.58);
  CHECK(ratio < 0.84);
}

TEST_CASE("slot feedback frequency matches the truth table") {
  SynthParams sp;
  sp.M = 2;
  sp.B = 1;
  sp.N = 16;
  sp.seed = 5;
  ChannelState ch = synth_channel(sp);
  ch.tx_power = {60.0};
  set_relative_perturbation(ch, 0.6);
  ArmSpace space(ProblemDims{2, 1, 8, 3, 100, 24}, RateSet({6, 8, 12}));
  const Codebook cb = dft_codebook(1, 16, 8, 0.5);
  const TruthTable truth = truth_table(ch, cb, space, 1000000, 77);
  // UE0 and UE1 on their optimal beams, at each rate.
  for (int r = 0; r < 3; ++r) {
    Assignment s = truth.s_star;
    for (auto& c : s.choices) c.rate_idx = r;
    const int slots = 100000;
    std::vector<int> hits(2, 0);
    for (int t = 1; t <= slots; ++t) {
      const Feedback fb = step(ch, cb, space, s, 31, t);
      hits[0] += fb[0];
      hits[1] += fb[1];
    }
    for (int m = 0; m < 2; ++m) {
      const double psi = truth.psi[static_cast<std::size_t>(space.flat(m, s.choices[static_cast<std::size_t>(m)].beam, r))];
      const double freq = static_cast<double>(hits[static_cast<std::size_t>(m)]) / slots;
      CAPTURE(m);
      CAPTURE(r);
      CHECK(std::abs(freq - psi) <= 3.0 * std::sqrt(psi * (1 - psi) / slots) + 1e-12);
    }
  }
}

TEST_CASE("feedback is determined by (seed, slot)") {
  SynthParams sp;
  sp.M = 2;
  sp.seed = 2;
  ChannelState ch = synth_channel(sp);
  ch.tx_power = {50.0};
  set_relative_perturbation(ch, 0.8);
  ArmSpace space(ProblemDims{2, 1, 4, 2, 10, 8}, RateSet({6, 8}));
  const Codebook cb = dft_codebook(1, 16, 4, 0.5);
  const Assignment s{{{0, 0}, {3, 1}}};
  for (std::int64_t t = 1; t < 50; ++t) CHECK(step(ch, cb, space, s, 8, t) == step(ch, cb, space, s, 8, t));
  CHECK_THROWS_AS(step(ch, cb, space, Assignment{{{1, 0}, {1, 0}}}, 8, 1), Error);
}

TEST_CASE("channel dump round trip and error categories") {
  SynthParams sp;
  sp.M = 15;
  sp.B = 3;
  sp.N = 64;
  sp.seed = 12;
  const ChannelState ch = synth_channel(sp);
  const fs::path p = temp_path("paper_scale.satb");
  save_channel_dump(p, ch);
  const ChannelState back = load_channel_dump(p);
  CHECK(back.M == 15);
  CHECK(back.B == 3);
  CHECK(back.N == 64);
  CHECK(back.mean == ch.mean);  // bit-identical
  CHECK(fs::file_size(p) == 4 + 4 * 4 + 15u * 3 * 64 * 16);

  auto kind_of = [](const fs::path& path) {
    try {
      load_channel_dump(path);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kState;
  };

  std::string bytes;
  {
    std::ifstream is(p, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(is), {});
  }
  auto write = [](const fs::path& path, const std::string& data) {
    std::ofstream os(path, std::ios::binary);
    os << data;
  };
  const fs::path truncated = temp_path("truncated.satb");
  write(truncated, bytes.substr(0, bytes.size() - 9));
  CHECK(kind_of(truncated) == ErrorKind::kDimensionMismatch);

  const fs::path trailing = temp_path("trailing.satb");
  write(trailing, bytes + "x");
  CHECK(kind_of(trailing) == ErrorKind::kDimensionMismatch);

  const fs::path magic = temp_path("magic.satb");
  std::string bad = bytes;
  bad[0] = 'X';
  write(magic, bad);
  CHECK(kind_of(magic) == ErrorKind::kParse);

  const fs::path header = temp_path("header.satb");
  write(header, bytes.substr(0, 10));
  CHECK(kind_of(header) == ErrorKind::kParse);

  const fs::path nonfinite = temp_path("nonfinite.satb");
  std::string nan_bytes = bytes;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::memcpy(nan_bytes.data() + 20 + 16 * 7, &nan, sizeof nan);
  write(nonfinite, nan_bytes);
  CHECK(kind_of(nonfinite) == ErrorKind::kNonFinite);

  CHECK(kind_of(temp_path("missing.satb")) == ErrorKind::kIo);
}

TEST_CASE("sidecar round trip") {
  SynthParams sp;
  sp.M = 2;
  sp.B = 2;
  ChannelState ch = synth_channel(sp);
  ch.tx_power = {3.0, 4.0};
  ch.noise_var = {0.5, 0.25};
  ch.sigma_ch = {0.1, 0.2, 0.3, 0.4};
  const fs::path p = temp_path("sidecar.json");
  save_channel_sidecar(p, ch);
  ChannelState other = synth_channel(sp);
  load_channel_sidecar(p, other);
  CHECK(other.tx_power == ch.tx_power);
  CHECK(other.noise_var == ch.noise_var);
  CHECK(other.sigma_ch == ch.sigma_ch);
}
