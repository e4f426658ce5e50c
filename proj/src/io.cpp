#include "monoculus/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

namespace monoculus {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw std::invalid_argument(fmt::format("bad value '{}' for {}", t, key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw std::invalid_argument(fmt::format("bad boolean '{}' for {}", t, key));
}

PerturbationSpec& perturbation(SimulationParams& p) {
  if (!p.perturbation) p.perturbation = PerturbationSpec{};
  return *p.perturbation;
}

std::string_view phase_name(TracePhase phase) {
  switch (phase) {
    case TracePhase::Activate: return "LCM";
    case TracePhase::Look: return "L";
    case TracePhase::Move: return "M";
  }
  return "?";
}

}  // namespace

void apply_param(SimulationParams& p, std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (key == "algo") {
    const auto id = parse_algorithm(v);
    if (!id) throw std::invalid_argument("unknown algorithm '" + v + "'");
    p.algorithm = *id;
  } else if (key == "sched") {
    const auto m = parse_scheduler(v);
    if (!m) throw std::invalid_argument("unknown scheduler '" + v + "'");
    p.scheduler = *m;
  } else if (key == "seed") {
    p.seed = parse_number<std::uint64_t>(key, v);
  } else if (key == "fairness") {
    p.fairness = parse_number<std::size_t>(key, v);
  } else if (key == "ssync-p") {
    p.ssync_activation = parse_number<double>(key, v);
  } else if (key == "b") {
    p.b = parse_number<double>(key, v);
  } else if (key == "c") {
    p.c = parse_number<double>(key, v);
  } else if (key == "n") {
    p.n = parse_number<std::size_t>(key, v);
  } else if (key == "dim") {
    p.dim = parse_number<std::size_t>(key, v);
  } else if (key == "side") {
    p.side = parse_number<double>(key, v);
  } else if (key == "max-events") {
    p.max_events = parse_number<std::uint64_t>(key, v);
  } else if (key == "window") {
    p.stability_window = parse_number<std::size_t>(key, v);
  } else if (key == "tie") {
    if (v == "lex") {
      p.options.tie_break.mode = TieBreakMode::Lexicographic;
    } else if (v == "seeded") {
      p.options.tie_break.mode = TieBreakMode::Seeded;
    } else {
      throw std::invalid_argument("tie must be lex or seeded");
    }
  } else if (key == "tie-seed") {
    p.options.tie_break.seed = parse_number<std::uint64_t>(key, v);
  } else if (key == "corner-diag") {
    p.options.corner_diagonal = parse_bool(key, v);
  } else if (key == "reference-sensing") {
    p.reference_sensing = parse_bool(key, v);
  } else if (key == "perturb-event") {
    perturbation(p).at_event = parse_number<std::uint64_t>(key, v);
  } else if (key == "perturb-magnitude") {
    perturbation(p).magnitude = parse_number<double>(key, v);
  } else if (key == "perturb-seed") {
    perturbation(p).seed = parse_number<std::uint64_t>(key, v);
  } else if (key == "perturb-memory") {
    perturbation(p).corrupt_memory = parse_bool(key, v);
  } else if (key == "init") {
    p.initial = load_configuration(v);
  } else {
    throw std::invalid_argument(fmt::format("unknown parameter '{}'", key));
  }
}

std::vector<std::pair<std::string, std::string>> param_entries(const SimulationParams& p) {
  std::vector<std::pair<std::string, std::string>> kv{
      {"algo", std::string(cli_name(p.algorithm))},
      {"sched", std::string(cli_name(p.scheduler))},
      {"seed", fmt::format("{}", p.seed)},
      {"fairness", fmt::format("{}", p.fairness)},
      {"ssync-p", fmt::format("{}", p.ssync_activation)},
      {"b", fmt::format("{}", p.b)},
      {"c", fmt::format("{}", p.c)},
      {"n", fmt::format("{}", p.n)},
      {"dim", fmt::format("{}", p.dim)},
      {"side", fmt::format("{}", p.side)},
      {"max-events", fmt::format("{}", p.max_events)},
      {"window", fmt::format("{}", p.stability_window)},
      {"tie", p.options.tie_break.mode == TieBreakMode::Seeded ? "seeded" : "lex"},
      {"tie-seed", fmt::format("{}", p.options.tie_break.seed)},
      {"corner-diag", p.options.corner_diagonal ? "1" : "0"},
      {"reference-sensing", p.reference_sensing ? "1" : "0"},
  };
  if (p.perturbation) {
    kv.emplace_back("perturb-event", fmt::format("{}", p.perturbation->at_event));
    kv.emplace_back("perturb-magnitude", fmt::format("{}", p.perturbation->magnitude));
    kv.emplace_back("perturb-seed", fmt::format("{}", p.perturbation->seed));
    kv.emplace_back("perturb-memory", p.perturbation->corrupt_memory ? "1" : "0");
  }
  return kv;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(fmt::format("{}:{}: expected key = value", path, line_no));
    }
    kv[trim(std::string_view(body).substr(0, eq))] = trim(std::string_view(body).substr(eq + 1));
  }
  return kv;
}

void write_trace_csv(std::ostream& out, const SimulationParams& params, const RunResult& result) {
  out << "# monoculus-trace v1\n";
  for (const auto& [k, v] : param_entries(params)) out << "# param " << k << '=' << v << '\n';
  for (const auto& p : result.initial.positions()) {
    out << "# init " << fmt::format("{}", fmt::join(p.coords(), ",")) << '\n';
  }
  if (params.initial_memory) {
    out << "# memory " << fmt::format("{}", fmt::join(*params.initial_memory, ",")) << '\n';
  }

  const std::size_t d = result.initial.dim();
  out << "event,round,robot,phase,algo";
  for (std::size_t k = 1; k <= d; ++k) out << ",x_before_" << k;
  for (std::size_t k = 1; k <= d; ++k) out << ",x_after_" << k;
  out << ",work_cum\n";

  const std::string_view algo = cli_name(params.algorithm);
  fmt::memory_buffer buf;
  for (const auto& r : result.trace) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{}\n", r.event, r.round, r.robot,
                   phase_name(r.phase), algo, fmt::join(r.before.coords(), ","),
                   fmt::join(r.after.coords(), ","), r.work_cum);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

std::string trace_csv(const SimulationParams& params, const RunResult& result) {
  std::ostringstream out;
  write_trace_csv(out, params, result);
  return out.str();
}

SimulationParams read_trace_params(std::istream& in) {
  SimulationParams p;
  std::vector<Point> init;
  std::string line;
  bool saw_magic = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() != '#') break;
    const std::string body = trim(std::string_view(line).substr(1));
    if (body == "monoculus-trace v1") {
      saw_magic = true;
    } else if (body.rfind("param ", 0) == 0) {
      const std::string kv = body.substr(6);
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("malformed trace parameter line");
      apply_param(p, kv.substr(0, eq), kv.substr(eq + 1));
    } else if (body.rfind("init ", 0) == 0) {
      std::vector<double> coords;
      std::string field;
      std::istringstream fields(body.substr(5));
      while (std::getline(fields, field, ',')) coords.push_back(parse_number<double>("init", field));
      if (coords.size() < 2 || coords.size() > kMaxDim) throw std::invalid_argument("bad init row in trace");
      init.push_back(Point::from_coords(coords));
    } else if (body.rfind("memory ", 0) == 0) {
      std::vector<std::uint32_t> bits;
      std::string field;
      std::istringstream fields(body.substr(7));
      while (std::getline(fields, field, ',')) bits.push_back(parse_number<std::uint32_t>("memory", field));
      p.initial_memory = bits;
    }
  }
  if (!saw_magic) throw std::invalid_argument("not a monoculus trace");
  if (init.size() < 2) throw std::invalid_argument("trace preamble lacks the initial configuration");
  p.initial = Configuration(std::move(init));
  return p;
}

std::string run_summary_json(const SimulationParams& params, const RunResult& result, const RunMetrics& metrics) {
  nlohmann::ordered_json j;
  j["algo"] = cli_name(params.algorithm);
  j["sched"] = cli_name(params.scheduler);
  j["seed"] = params.seed;
  j["n"] = result.initial.size();
  j["dim"] = result.initial.dim();
  j["converged"] = result.converged;
  j["rounds"] = result.rounds;
  j["rounds_executed"] = result.rounds_executed;
  j["work"] = result.work;
  j["work_total"] = result.work_total;
  j["events"] = result.events;
  j["quiescent"] = result.quiescent;
  j["cap_reached"] = result.cap_reached;
  if (uses_memory(params.algorithm)) j["all_robots_stopped"] = result.all_stopped;
  const BoundingBox box = bounding_box(result.final_config.positions());
  j["final_bbox_min"] = std::vector<double>(box.min.coords().begin(), box.min.coords().end());
  j["final_bbox_max"] = std::vector<double>(box.max.coords().begin(), box.max.coords().end());
  j["final_max_pairwise"] = max_pairwise_distance(result.final_config.positions());
  j["d_opt"] = metrics.d_opt;
  j["d_max"] = metrics.d_max;
  j["rho"] = metrics.rho ? nlohmann::json(*metrics.rho) : nlohmann::json(nullptr);
  j["tau"] = metrics.tau ? nlohmann::json(*metrics.tau) : nlohmann::json(nullptr);
  return j.dump(2);
}

}  // namespace monoculus
