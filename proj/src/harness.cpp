#include "satcts/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>

#include "satcts/format.hpp"

namespace satcts {

namespace fs = std::filesystem;
using nlohmann::json;

// --- configuration ---------------------------------------------------------

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(ErrorKind::kConfig, where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(ErrorKind::kConfig, "unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, where + "." + key + ": " + e.what());
  }
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

}  // namespace

void ScenarioConfig::validate() const {
  // Bad values in a scenario file are config errors; infeasible dims keep
  // their own category.
  auto as_config = [](auto&& check) {
    try {
      check();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInvalidArgument) fail(ErrorKind::kConfig, e.what());
      throw;
    }
  };
  as_config([&] { dims.validate(); });
  if (dims.T0 != static_cast<std::int64_t>(dims.B) * dims.K * dims.R) {
    fail(ErrorKind::kConfig, "T0 must equal B*K*R");
  }
  if (N < 1) fail(ErrorKind::kConfig, "N must be >= 1");
  if (static_cast<int>(rates.size()) != dims.R) {
    fail(ErrorKind::kConfig, "rates has " + std::to_string(rates.size()) + " entries, R = " +
                                 std::to_string(dims.R));
  }
  as_config([&] { RateSet check(rates); });
  if (!(tau >= 0.0) || !std::isfinite(tau)) fail(ErrorKind::kConfig, "tau must be finite and >= 0");
  if (n_mc < 1) fail(ErrorKind::kConfig, "n_mc must be >= 1");
  if (policies.empty()) fail(ErrorKind::kConfig, "policy list is empty");
  if (seeds.empty()) fail(ErrorKind::kConfig, "seed list is empty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    fail(ErrorKind::kConfig, "seed list has duplicates");
  }
  if (channel.source != "synthetic" && channel.source != "dump") {
    fail(ErrorKind::kConfig, "channel.source must be 'synthetic' or 'dump'");
  }
  if (channel.source == "dump" && channel.dump.empty()) fail(ErrorKind::kConfig, "channel.dump path missing");
  if (channel.paths < 1) fail(ErrorKind::kConfig, "channel.paths must be >= 1");
  if (!(channel.tx_power > 0.0)) fail(ErrorKind::kConfig, "channel.tx_power must be > 0");
  if (!(channel.noise_var > 0.0)) fail(ErrorKind::kConfig, "channel.noise_var must be > 0");
  if (channel.sigma_ch && !(*channel.sigma_ch >= 0.0)) fail(ErrorKind::kConfig, "channel.sigma_ch must be >= 0");
  if (!(channel.sigma_ch_rel >= 0.0)) fail(ErrorKind::kConfig, "channel.sigma_ch_rel must be >= 0");
  if (!(theory.delta > 0.0 && theory.delta < 0.25)) fail(ErrorKind::kConfig, "theory.delta must lie in (0, 1/4)");
  if (theory.epsilon && !(*theory.epsilon > 0.0)) fail(ErrorKind::kConfig, "theory.epsilon must be > 0");
  if (bandwidth_mhz < 0.0) fail(ErrorKind::kConfig, "bandwidth_mhz must be >= 0");
  if (threads < 0) fail(ErrorKind::kConfig, "threads must be >= 0");
}

ScenarioConfig scenario_from_json(const json& doc, const fs::path& base_dir) {
  ScenarioConfig c;
  reject_unknown(doc, {"name", "dims", "T0", "rates", "tau", "channel", "truth", "policies", "seeds",
                       "reset_priors", "theory", "out_dir", "bandwidth_mhz", "threads",
                       "write_run_csvs"},
                 "scenario");
  read(doc, "name", c.name, "scenario");
  if (doc.contains("dims")) {
    const json& d = doc["dims"];
    reject_unknown(d, {"M", "B", "K", "R", "N", "T"}, "dims");
    read(d, "M", c.dims.M, "dims");
    read(d, "B", c.dims.B, "dims");
    read(d, "K", c.dims.K, "dims");
    read(d, "R", c.dims.R, "dims");
    read(d, "N", c.N, "dims");
    read(d, "T", c.dims.T, "dims");
  }
  c.dims.T0 = static_cast<std::int64_t>(c.dims.B) * c.dims.K * c.dims.R;
  if (doc.contains("T0")) {
    // Accepted so a resolved echo loads back; it is always B*K*R.
    std::int64_t t0 = 0;
    read(doc, "T0", t0, "scenario");
    if (t0 != c.dims.T0) fail(ErrorKind::kConfig, "T0 must equal B*K*R = " + std::to_string(c.dims.T0));
  }
  read(doc, "rates", c.rates, "scenario");
  read(doc, "tau", c.tau, "scenario");
  if (doc.contains("channel")) {
    const json& ch = doc["channel"];
    reject_unknown(ch, {"source", "dump", "sidecar", "paths", "path_gain_std", "seed",
                        "d_over_lambda", "tx_power", "noise_var", "sigma_ch", "sigma_ch_rel"},
                   "channel");
    read(ch, "source", c.channel.source, "channel");
    std::string dump, sidecar;
    read(ch, "dump", dump, "channel");
    read(ch, "sidecar", sidecar, "channel");
    c.channel.dump = resolve(dump, base_dir);
    c.channel.sidecar = resolve(sidecar, base_dir);
    read(ch, "paths", c.channel.paths, "channel");
    read(ch, "path_gain_std", c.channel.path_gain_std, "channel");
    read(ch, "seed", c.channel.seed, "channel");
    read(ch, "d_over_lambda", c.channel.d_over_lambda, "channel");
    read(ch, "tx_power", c.channel.tx_power, "channel");
    read(ch, "noise_var", c.channel.noise_var, "channel");
    if (ch.contains("sigma_ch") && !ch["sigma_ch"].is_null()) {
      double v = 0.0;
      read(ch, "sigma_ch", v, "channel");
      c.channel.sigma_ch = v;
    }
    read(ch, "sigma_ch_rel", c.channel.sigma_ch_rel, "channel");
  }
  if (doc.contains("truth")) {
    const json& t = doc["truth"];
    reject_unknown(t, {"n_mc", "seed"}, "truth");
    read(t, "n_mc", c.n_mc, "truth");
    read(t, "seed", c.truth_seed, "truth");
  }
  if (doc.contains("policies")) {
    std::vector<std::string> names;
    read(doc, "policies", names, "scenario");
    c.policies.clear();
    for (const auto& n : names) c.policies.push_back(parse_policy_kind(n));
  }
  read(doc, "seeds", c.seeds, "scenario");
  read(doc, "reset_priors", c.reset_priors, "scenario");
  if (doc.contains("theory")) {
    const json& th = doc["theory"];
    reject_unknown(th, {"delta", "epsilon", "alpha1"}, "theory");
    read(th, "delta", c.theory.delta, "theory");
    read(th, "alpha1", c.theory.alpha1, "theory");
    if (th.contains("epsilon") && !th["epsilon"].is_null()) {
      double v = 0.0;
      read(th, "epsilon", v, "theory");
      c.theory.epsilon = v;
    }
  }
  std::string out;
  read(doc, "out_dir", out, "scenario");
  if (!out.empty()) c.out_dir = resolve(out, base_dir);
  read(doc, "bandwidth_mhz", c.bandwidth_mhz, "scenario");
  read(doc, "threads", c.threads, "scenario");
  read(doc, "write_run_csvs", c.write_run_csvs, "scenario");
  c.validate();
  return c;
}

ScenarioConfig load_scenario(const fs::path& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::kIo, "cannot open scenario " + path.string());
  json doc;
  try {
    doc = json::parse(is, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, "scenario " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc, path.parent_path());
}

json scenario_to_json(const ScenarioConfig& c) {
  json doc;
  doc["name"] = c.name;
  doc["dims"] = {{"M", c.dims.M}, {"B", c.dims.B}, {"K", c.dims.K},
                 {"R", c.dims.R}, {"N", c.N},      {"T", c.dims.T}};
  doc["T0"] = c.dims.T0;
  doc["rates"] = c.rates;
  doc["tau"] = c.tau;
  json ch = {{"source", c.channel.source},
             {"paths", c.channel.paths},
             {"path_gain_std", c.channel.path_gain_std},
             {"seed", c.channel.seed},
             {"d_over_lambda", c.channel.d_over_lambda},
             {"tx_power", c.channel.tx_power},
             {"noise_var", c.channel.noise_var},
             {"sigma_ch_rel", c.channel.sigma_ch_rel}};
  ch["sigma_ch"] = c.channel.sigma_ch ? json(*c.channel.sigma_ch) : json(nullptr);
  if (c.channel.source == "dump") {
    ch["dump"] = c.channel.dump.string();
    ch["sidecar"] = c.channel.sidecar.string();
  }
  doc["channel"] = ch;
  doc["truth"] = {{"n_mc", c.n_mc}, {"seed", c.truth_seed}};
  std::vector<std::string> names;
  for (auto k : c.policies) names.emplace_back(to_string(k));
  doc["policies"] = names;
  doc["seeds"] = c.seeds;
  doc["reset_priors"] = c.reset_priors;
  doc["theory"] = {{"delta", c.theory.delta},
                   {"alpha1", c.theory.alpha1},
                   {"epsilon", c.theory.epsilon ? json(*c.theory.epsilon) : json(nullptr)}};
  doc["out_dir"] = c.out_dir.string();
  doc["bandwidth_mhz"] = c.bandwidth_mhz;
  doc["threads"] = c.threads;
  doc["write_run_csvs"] = c.write_run_csvs;
  return doc;
}

// --- runs ------------------------------------------------------------------

World build_world(const ScenarioConfig& config, Exec exec) {
  config.validate();
  ArmSpace space(config.dims, RateSet(config.rates));
  Codebook codebook = dft_codebook(config.dims.B, config.N, config.dims.K, config.channel.d_over_lambda);
  ChannelState channel;
  if (config.channel.source == "dump") {
    channel = load_channel_dump(config.channel.dump);
    channel.tx_power.assign(static_cast<std::size_t>(channel.B), config.channel.tx_power);
    channel.noise_var.assign(static_cast<std::size_t>(channel.M), config.channel.noise_var);
    if (config.channel.sigma_ch) {
      channel.sigma_ch.assign(static_cast<std::size_t>(channel.M) * channel.B, *config.channel.sigma_ch);
    } else {
      set_relative_perturbation(channel, config.channel.sigma_ch_rel);
    }
    if (!config.channel.sidecar.empty()) load_channel_sidecar(config.channel.sidecar, channel);
  } else {
    SynthParams sp;
    sp.M = config.dims.M;
    sp.B = config.dims.B;
    sp.N = config.N;
    sp.paths = config.channel.paths;
    sp.d_over_lambda = config.channel.d_over_lambda;
    sp.path_gain_std = config.channel.path_gain_std;
    sp.seed = config.channel.seed;
    channel = synth_channel(sp);
    channel.tx_power.assign(static_cast<std::size_t>(channel.B), config.channel.tx_power);
    channel.noise_var.assign(static_cast<std::size_t>(channel.M), config.channel.noise_var);
    if (config.channel.sigma_ch) {
      channel.sigma_ch.assign(static_cast<std::size_t>(channel.M) * channel.B, *config.channel.sigma_ch);
    } else {
      set_relative_perturbation(channel, config.channel.sigma_ch_rel);
    }
  }
  check_compatible(channel, codebook, space);
  TruthTable truth = truth_table(channel, codebook, space, config.n_mc, config.truth_seed, exec);
  return World{std::move(space), std::move(codebook), std::move(channel), std::move(truth)};
}

RunTrace run_policy(const World& world, const ScenarioConfig& config, PolicyKind kind,
                    std::uint64_t seed, Exec exec) {
  const ArmSpace& space = world.space;
  const auto& dims = space.dims();
  PolicySpec spec{kind, SatCtsOptions{config.tau, config.reset_priors}};
  PolicyOptions opts;
  opts.seed = seed;
  opts.exec = exec;
  auto policy = make_policy(spec, space, opts);

  RunTrace trace;
  trace.policy = kind;
  trace.seed = seed;
  trace.tau = config.tau;
  trace.slots.reserve(static_cast<std::size_t>(dims.T));
  for (std::int64_t t = 1; t <= dims.T; ++t) {
    Decision d = policy->select(t);
    Feedback fb = step(world.channel, world.codebook, space, d.assignment, seed, t);
    policy->observe(d.assignment, fb, t);
    SlotRecord rec;
    rec.t = t;
    rec.phase = d.phase;
    rec.cts_round = d.cts_round;
    rec.sat_regret = per_round_satisficing_regret(d.assignment, world.truth, space, config.tau);
    rec.std_regret = per_round_standard_regret(d.assignment, world.truth, space);
    rec.rewards.resize(static_cast<std::size_t>(dims.M));
    for (int m = 0; m < dims.M; ++m) {
      const auto& c = d.assignment.choices[static_cast<std::size_t>(m)];
      rec.rewards[static_cast<std::size_t>(m)] =
          fb[static_cast<std::size_t>(m)] != 0 ? space.rates()[c.rate_idx] : 0.0;
    }
    rec.assignment = std::move(d.assignment);
    rec.feedback = std::move(fb);
    trace.slots.push_back(std::move(rec));
  }
  return trace;
}

Campaign run_campaign(const ScenarioConfig& config) {
  if (config.threads > 0) omp_set_num_threads(config.threads);
  return run_campaign(config, build_world(config));
}

Campaign run_campaign(const ScenarioConfig& config, World world) {
  config.validate();
  if (config.threads > 0) omp_set_num_threads(config.threads);
  Campaign campaign{config, std::move(world), {}};
  struct Job {
    PolicyKind kind;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto kind : config.policies) {
    for (auto seed : config.seeds) jobs.push_back({kind, seed});
  }
  const auto n = static_cast<std::int64_t>(jobs.size());
  campaign.runs.resize(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  // With several runs, parallelism is across runs and each run's kernels
  // stay serial; a single run uses the parallel kernels instead.
  const Exec inner = n > 1 ? Exec::kSerial : Exec::kParallel;
  const int M = config.dims.M;
#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const auto& job = jobs[static_cast<std::size_t>(i)];
      RunResult r;
      r.trace = run_policy(campaign.world, config, job.kind, job.seed, inner);
      r.cum_sat = cumulative_satisficing_regret(r.trace);
      r.cum_std = cumulative_standard_regret(r.trace);
      r.fairness = fairness_series(r.trace, M);
      campaign.runs[static_cast<std::size_t>(i)] = std::move(r);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return campaign;
}

// --- artifacts -------------------------------------------------------------

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::kIo, "cannot write " + path.string());
  os << content;
  if (!os) fail(ErrorKind::kIo, "write failed for " + path.string());
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

// Sample standard deviation (n - 1); 0 for a single run.
MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (!std::isfinite(out.mean)) {
    out.std = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return out;
}

std::string run_file_name(PolicyKind kind, std::uint64_t seed) {
  return std::string(to_string(kind)) + "_seed" + std::to_string(seed) + ".csv";
}

void append(std::string& s, double x) { s += format_number(x); }

}  // namespace

std::vector<fs::path> write_campaign(const Campaign& campaign, const fs::path& dir) {
  const auto& config = campaign.config;
  const auto& space = campaign.world.space;
  std::vector<fs::path> written;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());

  {
    const fs::path p = dir / "config.json";
    write_file(p, scenario_to_json(config).dump(2) + "\n");
    written.push_back(p);
  }
  {
    std::string s = "ue,bs,beam,rate,psi,mu\n";
    for (std::int64_t a = 0; a < space.num_arms(); ++a) {
      const auto id = space.decode(a);
      s += std::to_string(id.ue) + ',' + std::to_string(id.bs) + ',' + std::to_string(id.beam) + ',';
      append(s, space.rates()[id.rate_idx]);
      s += ',';
      append(s, campaign.world.truth.psi[static_cast<std::size_t>(a)]);
      s += ',';
      append(s, campaign.world.truth.mu[static_cast<std::size_t>(a)]);
      s += '\n';
    }
    const fs::path p = dir / "truth.csv";
    write_file(p, s);
    written.push_back(p);
  }

  if (config.write_run_csvs) {
    const fs::path runs_dir = dir / "runs";
    fs::create_directories(runs_dir, ec);
    if (ec) fail(ErrorKind::kIo, "cannot create " + runs_dir.string());
    for (const auto& r : campaign.runs) {
      std::string s = "slot,phase,cts_round,sat_regret,std_regret,cum_sat_regret,cum_std_regret,jain,sum_log\n";
      for (std::size_t i = 0; i < r.trace.slots.size(); ++i) {
        const auto& rec = r.trace.slots[i];
        s += std::to_string(rec.t);
        s += ',';
        s += to_string(rec.phase);
        s += ',' + std::to_string(rec.cts_round) + ',';
        append(s, rec.sat_regret);
        s += ',';
        append(s, rec.std_regret);
        s += ',';
        append(s, r.cum_sat[i]);
        s += ',';
        append(s, r.cum_std[i]);
        s += ',';
        append(s, r.fairness.jain[i]);
        s += ',';
        append(s, r.fairness.sum_log[i]);
        s += '\n';
      }
      const fs::path p = runs_dir / run_file_name(r.trace.policy, r.trace.seed);
      write_file(p, s);
      written.push_back(p);
    }
  }

  const std::int64_t T = config.dims.T;
  const std::size_t seeds = config.seeds.size();
  std::string agg =
      "policy,slot,cum_sat_regret_mean,cum_sat_regret_std,cum_std_regret_mean,cum_std_regret_std,"
      "jain_mean,jain_std,sum_log_mean,sum_log_std\n";
  std::string summary = "policy,runs,cum_sat_regret_mean,cum_sat_regret_std,cum_std_regret_mean,"
                        "cum_std_regret_std,jain_mean,jain_std,sum_log_mean,sum_log_std,"
                        "throughput_mean,throughput_std";
  if (config.bandwidth_mhz > 0.0) summary += ",throughput_mbps_mean,throughput_mbps_std";
  summary += '\n';
  std::vector<double> buf(seeds);
  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    const std::string name(to_string(config.policies[p]));
    const RunResult* runs = campaign.runs.data() + p * seeds;
    auto column = [&](auto getter, std::size_t i) {
      for (std::size_t s = 0; s < seeds; ++s) buf[s] = getter(runs[s], i);
      return mean_std(buf);
    };
    auto sat = [](const RunResult& r, std::size_t i) { return r.cum_sat[i]; };
    auto stdr = [](const RunResult& r, std::size_t i) { return r.cum_std[i]; };
    auto jain = [](const RunResult& r, std::size_t i) { return r.fairness.jain[i]; };
    auto slog = [](const RunResult& r, std::size_t i) { return r.fairness.sum_log[i]; };
    for (std::int64_t t = 1; t <= T; ++t) {
      const auto i = static_cast<std::size_t>(t - 1);
      agg += name + ',' + std::to_string(t);
      for (const MeanStd& ms : {column(sat, i), column(stdr, i), column(jain, i), column(slog, i)}) {
        agg += ',';
        append(agg, ms.mean);
        agg += ',';
        append(agg, ms.std);
      }
      agg += '\n';
    }
    const auto last = static_cast<std::size_t>(T - 1);
    auto throughput = [&](const RunResult& r, std::size_t) {
      double total = 0.0;
      for (double g : r.fairness.final_throughput) total += g;
      return total / (static_cast<double>(config.dims.M) * static_cast<double>(T));
    };
    summary += name + ',' + std::to_string(seeds);
    const MeanStd tp = column(throughput, last);
    for (const MeanStd& ms : {column(sat, last), column(stdr, last), column(jain, last),
                              column(slog, last), tp}) {
      summary += ',';
      append(summary, ms.mean);
      summary += ',';
      append(summary, ms.std);
    }
    if (config.bandwidth_mhz > 0.0) {
      summary += ',';
      append(summary, tp.mean * config.bandwidth_mhz);
      summary += ',';
      append(summary, tp.std * config.bandwidth_mhz);
    }
    summary += '\n';
  }
  write_file(dir / "aggregate.csv", agg);
  written.push_back(dir / "aggregate.csv");
  write_file(dir / "summary.csv", summary);
  written.push_back(dir / "summary.csv");
  return written;
}

fs::path emit_plot_data(const fs::path& artifact_dir) {
  const fs::path in = artifact_dir / "aggregate.csv";
  std::ifstream is(in);
  if (!is) fail(ErrorKind::kIo, "cannot open " + in.string());
  std::string line;
  if (!std::getline(is, line)) fail(ErrorKind::kParse, in.string() + ": empty file");
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  const auto header = split(line);
  if (header.size() < 4 || header[0] != "policy" || header[1] != "slot" || header.size() % 2 != 0) {
    fail(ErrorKind::kParse, in.string() + ": not an aggregate CSV");
  }
  std::vector<std::string> metrics;
  for (std::size_t c = 2; c < header.size(); c += 2) {
    const std::string& h = header[c];
    const std::string suffix = "_mean";
    if (h.size() <= suffix.size() || h.compare(h.size() - suffix.size(), suffix.size(), suffix) != 0 ||
        header[c + 1] != h.substr(0, h.size() - suffix.size()) + "_std") {
      fail(ErrorKind::kParse, in.string() + ": unexpected column " + h);
    }
    metrics.push_back(h.substr(0, h.size() - suffix.size()));
  }
  std::string out = "policy,slot,metric,mean,std\n";
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      fail(ErrorKind::kDimensionMismatch, in.string() + ": row " + std::to_string(row) + " has " +
                                              std::to_string(cells.size()) + " cells");
    }
    for (std::size_t k = 0; k < metrics.size(); ++k) {
      out += cells[0] + ',' + cells[1] + ',' + metrics[k] + ',' + cells[2 + 2 * k] + ',' +
             cells[3 + 2 * k] + '\n';
    }
  }
  const fs::path p = artifact_dir / "plotdata.csv";
  write_file(p, out);
  return p;
}

// --- theory ------------------------------------------------------------------

TheoryReport theory_report(const ScenarioConfig& config) {
  ScenarioConfig cfg = config;
  cfg.reset_priors = true;
  cfg.policies = {PolicyKind::kSatCts};
  TheoryReport rep;
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  World built = build_world(cfg);
  rep.profile = gap_profile(built.truth, built.space, cfg.tau);
  Campaign campaign = run_campaign(cfg, std::move(built));
  const World& world = campaign.world;

  std::vector<RunTrace> traces;
  for (auto& r : campaign.runs) traces.push_back(r.trace);
  if (rep.profile.realizable()) {
    rep.realizable = theorem1_constants(rep.profile, world.space, cfg.theory);
    rep.check = bound_check(traces, rep.profile, rep.realizable->total(), BoundMode::kRealizable);
  } else if (rep.profile.delta_star_nr > 0.0) {
    rep.nonrealizable = theorem2_constants(rep.profile, world.space, cfg.theory, cfg.dims.T);
    rep.check = bound_check(traces, rep.profile, rep.nonrealizable->total(), BoundMode::kNonRealizable);
  } else {
    fail(ErrorKind::kInvalidArgument, "tau equals g*: neither bound applies");
  }

  std::int64_t failures = 0, checked = 0, lcb_bad = 0;
  for (const auto& t : traces) {
    rep.audits.push_back(audit_trace(t, world.truth, world.space));
    failures += rep.audits.back().good_event_failures;
    checked += rep.audits.back().checked_slots;
    lcb_bad += rep.audits.back().gated_lcb_bad;
  }
  bool structural = true;
  for (const auto& a : rep.audits) structural = structural && a.structural_ok();
  rep.head = {{"scenario", cfg.name}};
  rep.tail = {
      {"good_event_failures_mean",
       format_number(static_cast<double>(failures) / static_cast<double>(traces.size()))},
      {"good_event_budget",
       format_number(good_event_budget(world.space.num_arms(), cfg.dims.T0 + 1, cfg.dims.T))},
      {"gated_lcb_bad_on_good_slots", std::to_string(lcb_bad)},
      {"audited_slots", std::to_string(checked)},
      {"structural_invariants", structural ? "ok" : "violated"},
  };
  rep.text = format_report(rep.profile, rep.realizable ? &*rep.realizable : nullptr,
                           rep.nonrealizable ? &*rep.nonrealizable : nullptr, &rep.check, rep.head,
                           rep.tail);
  return rep;
}

std::vector<fs::path> write_theory_report(const TheoryReport& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create " + dir.string());
  const fs::path txt = dir / "theory_report.txt";
  const fs::path csv = dir / "theory_constants.csv";
  write_file(txt, report.text);
  write_file(csv, format_constants_csv(report.profile, report.realizable ? &*report.realizable : nullptr,
                                       report.nonrealizable ? &*report.nonrealizable : nullptr,
                                       &report.check, report.head, report.tail));
  return {txt, csv};
}

}  // namespace satcts
