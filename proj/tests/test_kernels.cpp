#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <omp.h>
#include <vector>

#include "satcts/kernels.hpp"

using namespace satcts;

namespace {

// Paper-scale arm space: 15 * 3 * 120 * 3 = 16200 arms.
ArmSpace big_space() { return ArmSpace(ProblemDims{15, 3, 120, 3, 100000, 1080}, RateSet({6, 8, 12})); }

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("thompson scores: serial and parallel agree bit for bit") {
  const ArmSpace space = big_space();
  BetaPosterior post(space.num_arms());
  Stream rng(1, StreamDomain::kTest, 0, 0);
  for (std::int64_t a = 0; a < space.num_arms(); ++a) post.set(a, 1 + static_cast<std::int64_t>(rng() % 50), 1 + static_cast<std::int64_t>(rng() % 50));
  std::vector<double> s(static_cast<std::size_t>(space.num_arms())), p(s.size());
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    kernels::thompson_scores(post, space, 9, StreamDomain::kCts, 77, s, Exec::kSerial);
    kernels::thompson_scores(post, space, 9, StreamDomain::kCts, 77, p, Exec::kParallel);
    CHECK(bit_equal(s, p));
  }
  for (std::size_t a = 0; a < s.size(); ++a) {
    CHECK(s[a] >= 0.0);
    CHECK(s[a] <= space.rate_of(static_cast<std::int64_t>(a)));
  }
  kernels::thompson_scores(post, space, 9, StreamDomain::kCts, 78, p, Exec::kSerial);
  CHECK_FALSE(bit_equal(s, p));
}

TEST_CASE("index tables: serial and parallel agree bit for bit") {
  const ArmSpace space = big_space();
  SharedCounters c(space.num_arms());
  Stream rng(2, StreamDomain::kTest, 0, 0);
  for (std::int64_t a = 0; a < space.num_arms(); ++a) {
    const int n = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) c.update(a, rng() % 3 != 0);
  }
  const std::size_t n = static_cast<std::size_t>(space.num_arms());
  std::vector<double> ls(n), ms(n), lp(n), mp(n);
  kernels::index_tables(c, space, 5000, ls, ms, Exec::kSerial);
  kernels::index_tables(c, space, 5000, lp, mp, Exec::kParallel);
  CHECK(bit_equal(ls, lp));
  CHECK(bit_equal(ms, mp));
  for (std::size_t a = 0; a < n; ++a) {
    const auto arm = static_cast<std::int64_t>(a);
    const double r = space.rate_of(arm);
    CHECK(ms[a] == mean_index(r, c.empirical_mean(arm)));
    CHECK(ls[a] == lcb_index(r, c.empirical_mean(arm), concentration_radius(5000, c.pulls(arm))));
    CHECK(ls[a] <= ms[a]);
  }
  SharedCounters empty(space.num_arms());
  CHECK_THROWS_AS(kernels::index_tables(empty, space, 5, ls, ms, Exec::kSerial), Error);
  CHECK_THROWS_AS(kernels::index_tables(c, space, 0, ls, ms, Exec::kSerial), Error);
}

TEST_CASE("ucb scores: serial and parallel agree; unpulled arms are +inf") {
  const ArmSpace space = big_space();
  const std::size_t n = static_cast<std::size_t>(space.num_arms());
  std::vector<double> psi(n);
  std::vector<std::int64_t> pulls(n);
  Stream rng(3, StreamDomain::kTest, 0, 0);
  for (std::size_t a = 0; a < n; ++a) {
    pulls[a] = static_cast<std::int64_t>(rng() % 5);
    psi[a] = pulls[a] > 0 ? rng.uniform() : 0.0;
  }
  std::vector<double> s(n), p(n);
  kernels::ucb_scores(psi, pulls, space, 300, s, Exec::kSerial);
  kernels::ucb_scores(psi, pulls, space, 300, p, Exec::kParallel);
  CHECK(bit_equal(s, p));
  for (std::size_t a = 0; a < n; ++a) {
    if (pulls[a] == 0) {
      CHECK(s[a] == std::numeric_limits<double>::infinity());
    } else {
      CHECK(s[a] == ucb_index(space.rate_of(static_cast<std::int64_t>(a)), psi[a], concentration_radius(300, pulls[a])));
    }
  }
}

TEST_CASE("truth probabilities: serial and parallel agree bit for bit") {
  SynthParams sp;
  sp.M = 4;
  sp.B = 2;
  sp.N = 16;
  sp.seed = 4;
  ChannelState ch = synth_channel(sp);
  ch.tx_power = {50.0, 50.0};
  set_relative_perturbation(ch, 0.5);
  const ArmSpace space(ProblemDims{4, 2, 8, 3, 100, 48}, RateSet({6, 8, 12}));
  const Codebook cb = dft_codebook(2, 16, 8, 0.5);
  std::vector<double> s(static_cast<std::size_t>(space.num_arms())), p(s.size());
  kernels::truth_probabilities(ch, cb, space, 3000, 11, s, Exec::kSerial);
  for (int threads : {1, 3, 8}) {
    omp_set_num_threads(threads);
    kernels::truth_probabilities(ch, cb, space, 3000, 11, p, Exec::kParallel);
    CHECK(bit_equal(s, p));
  }
}

TEST_CASE("kernels reject mis-sized outputs") {
  const ArmSpace space(ProblemDims{1, 1, 2, 1, 10, 2}, RateSet({6}));
  std::vector<double> out(3);
  CHECK_THROWS_AS(kernels::thompson_scores(BetaPosterior(2), space, 1, StreamDomain::kCts, 1, out, Exec::kSerial), Error);
}
