// monoculus: single runs, sweeps, counterexamples and trace replay.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "monoculus/counterexample.hpp"
#include "monoculus/engine.hpp"
#include "monoculus/experiment.hpp"
#include "monoculus/io.hpp"
#include "monoculus/metrics.hpp"

namespace {

using namespace monoculus;

enum Exit : int { kOk = 0, kUsage = 1, kSearchFailed = 2, kIo = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SearchFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simulation flags shared by `run` and `experiment`, kept as text so that the
// config file and the command line go through the same parser.
const std::vector<std::pair<std::string, std::string>> kSimFlags{
    {"algo", "ld | ola | ola-term | median | bisector | oracle"},
    {"sched", "fsync | ssync | async"},
    {"seed", "base seed"},
    {"fairness", "fairness bound K (0: scheduler default)"},
    {"ssync-p", "SSYNC activation probability"},
    {"b", "step length"},
    {"c", "locality threshold"},
    {"n", "number of robots"},
    {"dim", "dimension"},
    {"side", "deployment cube side"},
    {"max-events", "event cap"},
    {"window", "stability window W (0: 5n)"},
    {"tie", "lex | seeded"},
    {"tie-seed", "seed of the seeded tie-break"},
    {"reference-sensing", "always use full occlusion sensing for OLA (0/1)"},
    {"perturb-event", "event index of the one-off perturbation"},
    {"perturb-magnitude", "perturbation radius"},
    {"perturb-seed", "perturbation seed"},
    {"perturb-memory", "also corrupt termination memory (0/1)"},
    {"init", "initial configuration CSV"},
};

struct SimFlags {
  std::map<std::string, std::string> values;
  std::string config;
  bool corner_diag = false;
  CLI::App* app = nullptr;

  void attach(CLI::App* sub, const std::vector<std::string>& skip = {}) {
    app = sub;
    for (const auto& [key, help] : kSimFlags) {
      if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
      sub->add_option("--" + key, values[key], help);
    }
    sub->add_flag("--corner-diag", corner_diag, "corner robots move along the local diagonal");
    sub->add_option("--config", config, "key = value parameter file; flags override it");
  }

  bool given(const std::string& key) const { return app->count("--" + key) > 0; }

  // File values first, then command-line values.
  std::map<std::string, std::string> merged() const {
    std::map<std::string, std::string> kv;
    if (!config.empty()) kv = read_key_value_file(config);
    for (const auto& [key, value] : values) {
      if (given(key)) kv[key] = value;
    }
    if (corner_diag) kv["corner-diag"] = "1";
    return kv;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw UsageError("empty list '" + text + "'");
  return out;
}

SimulationParams build_params(std::map<std::string, std::string> kv) {
  SimulationParams p;
  // init last so that a pinned configuration is read once.
  std::optional<std::string> init;
  if (auto it = kv.find("init"); it != kv.end()) {
    init = it->second;
    kv.erase(it);
  }
  for (const auto& [key, value] : kv) apply_param(p, key, value);
  if (init) apply_param(p, "init", *init);
  p.validate();
  return p;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << body;
  if (!out) throw IoError("write failed for " + path);
}

int cmd_run(const SimFlags& flags, const std::string& trace_path, const std::string& final_path) {
  SimulationParams p = build_params(flags.merged());
  p.record_trace = !trace_path.empty();
  const RunResult r = run(p);
  const RunMetrics m = compute_metrics(r, r.initial);
  if (!trace_path.empty()) write_file(trace_path, trace_csv(p, r));
  if (!final_path.empty()) save_configuration(final_path, r.final_config);
  fmt::print("{}\n", run_summary_json(p, r, m));
  return kOk;
}

int cmd_experiment(const SimFlags& flags, const std::string& out_dir, std::size_t trials, std::size_t threads,
                   const std::string& n_list, const std::string& side_list, const std::string& algo_list) {
  auto kv = flags.merged();
  ExperimentSpec spec;
  auto take = [&](const std::string& key, const std::string& cli) {
    if (!cli.empty()) return cli;
    auto it = kv.find(key);
    return it == kv.end() ? std::string() : it->second;
  };
  const std::string ns = take("n", n_list);
  const std::string sides = take("side", side_list);
  const std::string algos = take("algo", algo_list);
  for (const char* key : {"n", "side", "algo"}) kv.erase(key);
  if (!ns.empty()) {
    spec.n_values.clear();
    for (const auto& s : split_list(ns)) {
      SimulationParams tmp;
      apply_param(tmp, "n", s);
      spec.n_values.push_back(tmp.n);
    }
  }
  if (!sides.empty()) {
    spec.sides.clear();
    for (const auto& s : split_list(sides)) {
      SimulationParams tmp;
      apply_param(tmp, "side", s);
      spec.sides.push_back(tmp.side);
    }
  }
  if (!algos.empty()) {
    spec.algorithms.clear();
    for (const auto& s : split_list(algos)) {
      const auto id = parse_algorithm(s);
      if (!id) throw UsageError("unknown algorithm '" + s + "'");
      spec.algorithms.push_back(*id);
    }
  }
  if (kv.count("init")) throw UsageError("experiment deploys its own configurations; --init is not allowed");
  spec.base = build_params(kv);
  spec.base_seed = spec.base.seed;
  spec.trials = trials;
  spec.threads = threads;

  const ExperimentResult result = run_experiment(spec);
  for (const auto& path : write_experiment(result, spec, out_dir)) fmt::print("wrote {}\n", path);
  for (const auto& c : result.cells) {
    fmt::print("n={} side={} algo={} converged={}/{} rho_median={} tau_median={}\n", c.n, c.side,
               cli_name(c.algorithm), c.converged, c.summary.runs,
               c.summary.rho ? fmt::format("{:.4f}", c.summary.rho->median) : "-",
               c.summary.tau ? fmt::format("{:.4f}", c.summary.tau->median) : "-");
  }
  return kOk;
}

int cmd_counterexample(const std::string& strategy_name, bool search, std::uint64_t seed, std::size_t budget,
                       std::string fixture, const std::string& out_dir) {
  const auto strategy = parse_algorithm(strategy_name);
  if (!strategy || (*strategy != AlgorithmId::NaiveMedian && *strategy != AlgorithmId::NaiveAngleBisector)) {
    throw UsageError("--strategy must be median or bisector");
  }
  Configuration config = [&] {
    if (search) {
      auto found = search_counterexample(*strategy, seed, budget);
      if (!found) throw SearchFailed(fmt::format("no counterexample within {} attempts (seed {})", budget, seed));
      return *found;
    }
    if (fixture.empty()) fixture = default_fixture_path(*strategy);
    return load_configuration(fixture);
  }();

  const RoundOutcome naive = fsync_round(config, *strategy);
  const RoundOutcome ld = fsync_round(config, AlgorithmId::ConvergeLocality);
  fmt::print("strategy: {}\nrobots: {}\n", cli_name(*strategy), config.size());
  if (!search) fmt::print("fixture: {}\n", fixture);
  fmt::print("area_before: {:.12f}\narea_after: {:.12f}\nld_area_after: {:.12f}\n", naive.area_before,
             naive.area_after, ld.area_after);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir);
  const std::string stem = (std::filesystem::path(out_dir) / std::string(cli_name(*strategy))).string();
  save_configuration(stem + "_before.csv", naive.before);
  save_configuration(stem + "_after.csv", naive.after);
  fmt::print("wrote {0}_before.csv and {0}_after.csv\n", stem);

  if (!naive.area_increased()) {
    throw SearchFailed("configuration does not increase the hull area under " + std::string(cli_name(*strategy)));
  }
  return kOk;
}

int cmd_replay(const std::string& trace_path) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) throw IoError("cannot open trace " + trace_path);
  std::stringstream whole;
  whole << in.rdbuf();
  const std::string recorded = whole.str();

  std::istringstream preamble(recorded);
  SimulationParams p = read_trace_params(preamble);
  p.validate();
  p.record_trace = true;
  const RunResult r = run(p);
  const std::string replayed = trace_csv(p, r);
  fmt::print("{}\n", run_summary_json(p, r, compute_metrics(r, r.initial)));
  if (replayed != recorded) {
    fmt::print(stderr, "replay differs from {}\n", trace_path);
    return kSearchFailed;
  }
  fmt::print(stderr, "replay identical ({} bytes)\n", replayed.size());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance-oblivious robot convergence simulator"};
  app.require_subcommand(1);

  SimFlags run_flags;
  std::string trace_path, final_path;
  auto* run_cmd = app.add_subcommand("run", "execute one seeded run and print a JSON summary");
  run_flags.attach(run_cmd);
  run_cmd->add_option("--trace", trace_path, "write the event trace CSV here");
  run_cmd->add_option("--final", final_path, "write the final configuration CSV here");

  SimFlags exp_flags;
  std::string out_dir = "results", n_list, side_list, algo_list;
  std::size_t trials = 100, threads = 0;
  auto* exp_cmd = app.add_subcommand("experiment", "seeded sweep over robot counts and deployment sides");
  exp_flags.attach(exp_cmd, {"n", "side", "algo", "init"});
  exp_cmd->add_option("--n", n_list, "robot counts, comma separated (default 10,25,50,100)");
  exp_cmd->add_option("--side", side_list, "deployment sides, comma separated (default 50,100,200)");
  exp_cmd->add_option("--algo", algo_list, "algorithms, comma separated (default ld)");
  exp_cmd->add_option("--trials", trials, "trials per cell")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
  exp_cmd->add_option("--out", out_dir, "output directory");

  std::string strategy, fixture, ce_out = "counterexample";
  bool search = false;
  std::uint64_t ce_seed = 1;
  std::size_t budget = 100'000;
  auto* ce_cmd = app.add_subcommand("counterexample", "one FSYNC round of a naive strategy that grows the hull");
  ce_cmd->add_option("--strategy", strategy, "median | bisector")->required();
  ce_cmd->add_flag("--search", search, "search instead of loading the fixture");
  ce_cmd->add_option("--seed", ce_seed, "search seed");
  ce_cmd->add_option("--budget", budget, "search attempts");
  ce_cmd->add_option("--fixture", fixture, "configuration CSV to check");
  ce_cmd->add_option("--out", ce_out, "directory for the before/after configurations");

  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "re-run a recorded trace and compare it byte for byte");
  replay_cmd->add_option("trace", replay_path, "trace CSV written by `run --trace`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_flags, trace_path, final_path);
    if (*exp_cmd) return cmd_experiment(exp_flags, out_dir, trials, threads, n_list, side_list, algo_list);
    if (*ce_cmd) return cmd_counterexample(strategy, search, ce_seed, budget, fixture, ce_out);
    if (*replay_cmd) return cmd_replay(replay_path);
  } catch (const IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kIo;
  } catch (const SearchFailed& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kSearchFailed;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  }
  return kUsage;
}
