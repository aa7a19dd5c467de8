// Serial reference vs OpenMP kernels on a paper-scale arm space
// (M = 15, B = 3, K = 120, R = 3), plus assignment-oracle scaling in M.
#include <benchmark/benchmark.h>

#include <vector>

#include "satcts/assignment.hpp"
#include "satcts/kernels.hpp"

using namespace satcts;

namespace {

ArmSpace paper_space() {
  return ArmSpace(ProblemDims{15, 3, 120, 3, 10000, 1080}, RateSet({6, 8, 12}));
}

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel;
}

void BM_ThompsonScores(benchmark::State& state) {
  const ArmSpace space = paper_space();
  BetaPosterior post(space.num_arms());
  Stream rng(1, StreamDomain::kTest, 0, 0);
  for (std::int64_t a = 0; a < space.num_arms(); ++a) {
    post.set(a, 1 + static_cast<std::int64_t>(rng() % 40), 1 + static_cast<std::int64_t>(rng() % 40));
  }
  std::vector<double> out(static_cast<std::size_t>(space.num_arms()));
  std::int64_t t = 1;
  for (auto _ : state) {
    kernels::thompson_scores(post, space, 7, StreamDomain::kCts, t++, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * space.num_arms());
}
BENCHMARK(BM_ThompsonScores)->Arg(0)->Arg(1)->ArgName("parallel");

void BM_IndexTables(benchmark::State& state) {
  const ArmSpace space = paper_space();
  SharedCounters counters(space.num_arms());
  Stream rng(2, StreamDomain::kTest, 0, 0);
  for (std::int64_t a = 0; a < space.num_arms(); ++a) {
    for (int i = 0; i < 3; ++i) counters.update(a, rng() % 2 == 0);
  }
  std::vector<double> lcb(static_cast<std::size_t>(space.num_arms())), mean(lcb.size());
  for (auto _ : state) {
    kernels::index_tables(counters, space, 5000, lcb, mean, exec_of(state));
    benchmark::DoNotOptimize(lcb.data());
  }
  state.SetItemsProcessed(state.iterations() * space.num_arms());
}
BENCHMARK(BM_IndexTables)->Arg(0)->Arg(1)->ArgName("parallel");

void BM_TruthTable(benchmark::State& state) {
  SynthParams sp;
  sp.M = 4;
  sp.B = 2;
  sp.N = 32;
  ChannelState ch = synth_channel(sp);
  ch.tx_power = {50.0, 50.0};
  set_relative_perturbation(ch, 0.3);
  const ArmSpace space(ProblemDims{4, 2, 16, 3, 100, 96}, RateSet({6, 8, 12}));
  const Codebook cb = dft_codebook(2, 32, 16, 0.5);
  std::vector<double> psi(static_cast<std::size_t>(space.num_arms()));
  for (auto _ : state) {
    kernels::truth_probabilities(ch, cb, space, 2000, 1, psi, exec_of(state));
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_TruthTable)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

// One BestAssign call at fixed B*K = 360 for growing M.
void BM_BestAssign(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const ArmSpace space(ProblemDims{M, 3, 120, 3, 1, 0}, RateSet({6, 8, 12}));
  std::vector<double> scores(static_cast<std::size_t>(space.num_arms()));
  Stream rng(3, StreamDomain::kTest, 0, 0);
  for (auto& s : scores) s = 12.0 * rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(best_assignment(scores, space));
  state.SetComplexityN(M);
}
BENCHMARK(BM_BestAssign)->Arg(5)->Arg(10)->Arg(15)->Arg(20)->Complexity();

}  // namespace

BENCHMARK_MAIN();
