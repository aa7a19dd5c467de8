// satcts: run campaigns, compute bound constants, emit plot data.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "satcts/error.hpp"
#include "satcts/harness.hpp"

namespace {

// Exit codes: 0 ok, 2 usage, then one code per error category.
int exit_code(satcts::ErrorKind kind) {
  using satcts::ErrorKind;
  switch (kind) {
    case ErrorKind::kConfig: return 3;
    case ErrorKind::kParse: return 4;
    case ErrorKind::kIo: return 5;
    case ErrorKind::kInvalidArgument: return 6;
    case ErrorKind::kInfeasible: return 7;
    case ErrorKind::kDimensionMismatch: return 8;
    case ErrorKind::kNonFinite: return 9;
    case ErrorKind::kExactOnly: return 10;
    case ErrorKind::kState: return 11;
  }
  return 70;
}

std::vector<std::uint64_t> parse_seeds(const std::string& list) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string item = list.substr(pos, comma - pos);
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      satcts::fail(satcts::ErrorKind::kConfig, "--seeds: '" + item + "' is not a non-negative integer");
    }
    seeds.push_back(v);
    pos = comma + 1;
  }
  return seeds;
}

std::vector<satcts::PolicyKind> parse_policies(const std::string& list) {
  std::vector<satcts::PolicyKind> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    out.push_back(satcts::parse_policy_kind(list.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisficing combinatorial bandits for joint beam and rate adaptation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string seeds;
  std::string policies;
  std::string reset;
  auto* run = app.add_subcommand("run", "Run a multi-seed campaign and write CSV artifacts");
  run->add_option("config", config_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides out_dir)");
  run->add_option("--seeds", seeds, "Comma-separated seed list");
  run->add_option("--policies", policies, "Comma-separated subset of satcts,cts,cucb");
  run->add_option("--reset-priors", reset, "SAT-CTS prior reset per committed round")
      ->check(CLI::IsMember({"on", "off"}));

  std::string theory_config;
  std::string theory_out;
  auto* theory = app.add_subcommand("theory", "Bound constants and bound check for a small scenario");
  theory->add_option("config", theory_config, "Scenario JSON file")->required();
  theory->add_option("--out", theory_out, "Output directory (overrides out_dir)");

  std::string artifact_dir;
  auto* plot = app.add_subcommand("plotdata", "Long-format plot data from an artifact directory");
  plot->add_option("artifact-dir", artifact_dir, "Directory written by `run`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string context;
  try {
    if (*run) {
      context = config_path;
      satcts::ScenarioConfig cfg = satcts::load_scenario(config_path);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (!seeds.empty()) cfg.seeds = parse_seeds(seeds);
      if (!policies.empty()) cfg.policies = parse_policies(policies);
      if (!reset.empty()) cfg.reset_priors = reset == "on";
      cfg.validate();
      const auto campaign = satcts::run_campaign(cfg);
      const auto files = satcts::write_campaign(campaign, cfg.out_dir);
      std::cout << "wrote " << files.size() << " files to " << cfg.out_dir.string() << "\n";
    } else if (*theory) {
      context = theory_config;
      satcts::ScenarioConfig cfg = satcts::load_scenario(theory_config);
      if (!theory_out.empty()) cfg.out_dir = theory_out;
      const auto report = satcts::theory_report(cfg);
      satcts::write_theory_report(report, cfg.out_dir);
      std::cout << report.text;
      if (!report.check.pass) return 1;
    } else if (*plot) {
      context = artifact_dir;
      const auto p = satcts::emit_plot_data(artifact_dir);
      std::cout << "wrote " << p.string() << "\n";
    }
  } catch (const satcts::Error& e) {
    std::cerr << "satcts: " << context << ": " << satcts::to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "satcts: " << context << ": internal: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
