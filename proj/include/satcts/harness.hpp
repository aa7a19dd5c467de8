#pragma once

// Scenario files, multi-seed campaigns and CSV artifacts.
//
// A scenario is a JSON document (see scenarios/ and README.md). Every run of
// a campaign shares the channel and truth table built from the scenario's
// channel seed; the run seed drives the per-slot channel perturbation and
// the policy's own random draws. Environment draws are keyed by
// (seed, slot, UE, BS), so at equal seed all policies see the same
// channel realizations.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "satcts/core.hpp"
#include "satcts/environment.hpp"
#include "satcts/metrics.hpp"
#include "satcts/policies.hpp"
#include "satcts/theory.hpp"

namespace satcts {

struct ChannelConfig {
  std::string source = "synthetic";  // "synthetic" | "dump"
  std::filesystem::path dump;        // dump source
  std::filesystem::path sidecar;     // optional for dumps
  int paths = 3;
  double path_gain_std = 1.0;
  std::uint64_t seed = 1;
  double d_over_lambda = 0.5;
  double tx_power = 1.0;
  double noise_var = 1.0;
  std::optional<double> sigma_ch;  // absolute; overrides sigma_ch_rel
  double sigma_ch_rel = 0.1;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ProblemDims dims;  // T0 is always B*K*R
  int N = 16;
  std::vector<double> rates{6.0, 8.0, 12.0};
  double tau = 8.0;
  ChannelConfig channel;
  std::int64_t n_mc = 100000;
  std::uint64_t truth_seed = 1;
  std::vector<PolicyKind> policies{PolicyKind::kSatCts, PolicyKind::kCts, PolicyKind::kCucb};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  bool reset_priors = false;
  TheoryParams theory;
  std::filesystem::path out_dir = "out";
  double bandwidth_mhz = 0.0;  // > 0 adds Mbps columns to the summary
  int threads = 0;             // 0: OpenMP default
  bool write_run_csvs = true;

  void validate() const;
};

// Missing keys take defaults; unknown keys are rejected. Relative paths are
// resolved against `base_dir`.
ScenarioConfig scenario_from_json(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);
// Fully resolved echo with every default filled in.
nlohmann::json scenario_to_json(const ScenarioConfig& config);

struct World {
  ArmSpace space;
  Codebook codebook;
  ChannelState channel;
  TruthTable truth;
};

World build_world(const ScenarioConfig& config, Exec exec = Exec::kParallel);

RunTrace run_policy(const World& world, const ScenarioConfig& config, PolicyKind kind,
                    std::uint64_t seed, Exec exec);

struct RunResult {
  RunTrace trace;
  std::vector<double> cum_sat;
  std::vector<double> cum_std;
  FairnessSeries fairness;
};

struct Campaign {
  ScenarioConfig config;
  World world;
  std::vector<RunResult> runs;  // policy-major, then seeds in config order
};

// (policy, seed) runs execute on an OpenMP pool; results are collected in a
// fixed order, so output does not depend on scheduling.
Campaign run_campaign(const ScenarioConfig& config);
Campaign run_campaign(const ScenarioConfig& config, World world);

// runs/<policy>_seed<seed>.csv, aggregate.csv, summary.csv, truth.csv,
// config.json. Returns the list of written files.
std::vector<std::filesystem::path> write_campaign(const Campaign& campaign,
                                                  const std::filesystem::path& dir);

// Long-format plotdata.csv (policy, slot, metric, mean, std) from an
// artifact directory's aggregate.csv.
std::filesystem::path emit_plot_data(const std::filesystem::path& artifact_dir);

struct TheoryReport {
  GapProfile profile;
  std::optional<BoundConstants> realizable;
  std::optional<NonRealizableBound> nonrealizable;
  BoundCheck check;
  std::vector<TraceAudit> audits;
  ReportRows head;   // scenario name
  ReportRows tail;   // audit summary
  std::string text;
};

// Gap profile, Theorem 1 or 2 constants and a bound check against SAT-CTS
// runs in theory mode (priors reset per committed round) on the config's seeds.
TheoryReport theory_report(const ScenarioConfig& config);
std::vector<std::filesystem::path> write_theory_report(const TheoryReport& report,
                                                       const std::filesystem::path& dir);

}  // namespace satcts
