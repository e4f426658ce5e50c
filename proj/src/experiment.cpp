#include "monoculus/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "monoculus/io.hpp"
#include "monoculus/rng.hpp"

namespace monoculus {

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n, double side, std::size_t trial) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(side));
  return mix64(h ^ static_cast<std::uint64_t>(trial));
}

const CellRecord* ExperimentResult::cell(std::size_t n, double side, AlgorithmId algo) const {
  for (const auto& c : cells) {
    if (c.n == n && c.side == side && c.algorithm == algo) return &c;
  }
  return nullptr;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.n_values.empty() || spec.sides.empty() || spec.algorithms.empty() || spec.trials == 0) {
    throw std::invalid_argument("experiment sweep is empty");
  }

  ExperimentResult result;
  for (std::size_t n : spec.n_values) {
    for (double side : spec.sides) {
      for (AlgorithmId algo : spec.algorithms) {
        for (std::size_t t = 0; t < spec.trials; ++t) {
          TrialRecord rec;
          rec.n = n;
          rec.side = side;
          rec.algorithm = algo;
          rec.trial = t;
          rec.seed = trial_seed(spec.base_seed, n, side, t);
          result.trials.push_back(rec);
        }
      }
    }
  }

  // Validate once up front so that workers only see runtime failures.
  for (AlgorithmId algo : spec.algorithms) {
    SimulationParams probe = spec.base;
    probe.algorithm = algo;
    probe.initial.reset();
    probe.n = spec.n_values.front();
    probe.side = spec.sides.front();
    probe.validate();
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= result.trials.size()) return;
      TrialRecord& rec = result.trials[idx];
      try {
        SimulationParams p = spec.base;
        p.algorithm = rec.algorithm;
        p.n = rec.n;
        p.side = rec.side;
        p.seed = rec.seed;
        p.initial.reset();
        p.record_trace = false;
        const RunResult r = run(p);
        rec.converged = r.converged;
        rec.all_stopped = r.all_stopped;
        rec.metrics = compute_metrics(r, r.initial);
        rec.metrics.hull_perimeters.clear();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  std::size_t threads = spec.threads == 0 ? std::thread::hardware_concurrency() : spec.threads;
  threads = std::clamp<std::size_t>(threads, 1, result.trials.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t start = 0; start < result.trials.size(); start += spec.trials) {
    const TrialRecord& first = result.trials[start];
    std::vector<RunMetrics> metrics;
    CellRecord cell;
    cell.n = first.n;
    cell.side = first.side;
    cell.algorithm = first.algorithm;
    for (std::size_t t = 0; t < spec.trials; ++t) {
      const TrialRecord& rec = result.trials[start + t];
      metrics.push_back(rec.metrics);
      if (rec.converged) ++cell.converged;
    }
    cell.summary = aggregate(metrics);
    result.cells.push_back(std::move(cell));
  }
  return result;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); }

std::string five(const std::optional<FiveNumberSummary>& s) {
  if (!s) return ",,,,";
  return fmt::format("{},{},{},{},{}", s->min, s->q1, s->median, s->q3, s->max);
}

}  // namespace

std::string results_csv(const ExperimentResult& result) {
  std::string out = "n,side,algo,trial,seed,converged,all_stopped,rounds,work,d_opt,d_max,rho,tau\n";
  for (const auto& r : result.trials) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.n, r.side, cli_name(r.algorithm), r.trial,
                       r.seed, r.converged ? 1 : 0, r.all_stopped ? 1 : 0, r.metrics.rounds, r.metrics.work,
                       r.metrics.d_opt, r.metrics.d_max, opt(r.metrics.rho), opt(r.metrics.tau));
  }
  return out;
}

std::string summary_csv(const ExperimentResult& result) {
  std::string out =
      "n,side,algo,runs,converged,"
      "rho_min,rho_q1,rho_median,rho_q3,rho_max,"
      "tau_min,tau_q1,tau_median,tau_q3,tau_max,"
      "work_min,work_q1,work_median,work_q3,work_max,"
      "rounds_min,rounds_q1,rounds_median,rounds_q3,rounds_max\n";
  for (const auto& c : result.cells) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", c.n, c.side, cli_name(c.algorithm), c.summary.runs,
                       c.converged, five(c.summary.rho), five(c.summary.tau), five(c.summary.work),
                       five(c.summary.rounds));
  }
  return out;
}

std::vector<FigurePlan> plan_figures(const ExperimentSpec& spec) {
  std::vector<FigurePlan> plans;
  if (spec.n_values.size() > 1 || spec.sides.size() == 1) {
    for (double side : spec.sides) {
      plans.push_back({FigurePlan::Axis::RobotCount, side, fmt::format("ratios_vs_n_side{}.svg", side)});
    }
  }
  if (spec.sides.size() > 1) {
    for (std::size_t n : spec.n_values) {
      plans.push_back({FigurePlan::Axis::Side, static_cast<double>(n), fmt::format("ratios_vs_side_n{}.svg", n)});
    }
  }
  return plans;
}

namespace {

constexpr const char* kPalette[] = {"#4C72B0", "#DD8452", "#55A868", "#C44E52", "#8172B3", "#937860"};

struct Panel {
  double x0;
  double y0;
  double width;
  double height;
};

double nice_ceiling(double v) {
  if (!(v > 0.0)) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double step : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (step * mag >= v) return step * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string box_plot_svg(const ExperimentResult& result, const ExperimentSpec& spec, const FigurePlan& figure) {
  const bool by_n = figure.x == FigurePlan::Axis::RobotCount;
  std::vector<double> xs;
  if (by_n) {
    for (std::size_t n : spec.n_values) xs.push_back(static_cast<double>(n));
  } else {
    xs = spec.sides;
  }
  auto cell_at = [&](double x, AlgorithmId algo) {
    return by_n ? result.cell(static_cast<std::size_t>(x), figure.fixed, algo)
                : result.cell(static_cast<std::size_t>(figure.fixed), x, algo);
  };

  constexpr double kWidth = 960.0;
  constexpr double kHeight = 440.0;
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  const std::string title = by_n ? fmt::format("robots in a square of side {}", figure.fixed)
                                 : fmt::format("{} robots, varying deployment side", figure.fixed);
  svg += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n", kWidth / 2,
                     title);

  const std::array<Panel, 2> panels{{{70.0, 50.0, 380.0, 320.0}, {550.0, 50.0, 380.0, 320.0}}};
  const std::array<const char*, 2> names{"rho (work / d_opt)", "tau (rounds / d_max)"};
  for (std::size_t pi = 0; pi < 2; ++pi) {
    const Panel& pn = panels[pi];
    auto stat = [&](const CellRecord* c) { return pi == 0 ? c->summary.rho : c->summary.tau; };

    double ymax = 0.0;
    for (double x : xs) {
      for (AlgorithmId a : spec.algorithms) {
        const CellRecord* c = cell_at(x, a);
        if (c && stat(c)) ymax = std::max(ymax, stat(c)->max);
      }
    }
    ymax = nice_ceiling(ymax * 1.05);
    auto ypix = [&](double v) { return pn.y0 + pn.height * (1.0 - v / ymax); };

    svg += fmt::format(
        "<g>\n<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n"
        "<line x1=\"{0}\" y1=\"{2}\" x2=\"{3}\" y2=\"{2}\" stroke=\"black\"/>\n",
        pn.x0, pn.y0, pn.y0 + pn.height, pn.x0 + pn.width);
    for (int t = 0; t <= 5; ++t) {
      const double v = ymax * t / 5.0;
      svg += fmt::format(
          "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n"
          "<text x=\"{3}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:.3g}</text>\n",
          pn.x0, ypix(v), pn.x0 + pn.width, pn.x0 - 6, ypix(v) + 4, v);
    }
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", pn.x0 + pn.width / 2,
                       pn.y0 - 8, names[pi]);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", pn.x0 + pn.width / 2,
                       pn.y0 + pn.height + 40, by_n ? "number of robots" : "side of deployment square");

    const double slot = pn.width / static_cast<double>(xs.size());
    const double box_w = std::min(40.0, slot * 0.7 / static_cast<double>(spec.algorithms.size()));
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      const double cx = pn.x0 + slot * (static_cast<double>(xi) + 0.5);
      svg += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", cx,
                         pn.y0 + pn.height + 18, xs[xi]);
      for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
        const CellRecord* c = cell_at(xs[xi], spec.algorithms[ai]);
        if (!c || !stat(c)) continue;
        const FiveNumberSummary s = *stat(c);
        const double bx =
            cx + (static_cast<double>(ai) - static_cast<double>(spec.algorithms.size()) / 2.0) * box_w;
        const double mid = bx + box_w / 2;
        const char* color = kPalette[ai % std::size(kPalette)];
        svg += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n"
            "<line x1=\"{0:.2f}\" y1=\"{3:.2f}\" x2=\"{0:.2f}\" y2=\"{4:.2f}\" stroke=\"black\"/>\n"
            "<rect x=\"{5:.2f}\" y=\"{3:.2f}\" width=\"{6:.2f}\" height=\"{7:.2f}\" fill=\"{8}\" "
            "fill-opacity=\"0.7\" stroke=\"black\"/>\n"
            "<line x1=\"{5:.2f}\" y1=\"{9:.2f}\" x2=\"{10:.2f}\" y2=\"{9:.2f}\" stroke=\"black\" "
            "stroke-width=\"2\"/>\n",
            mid, ypix(s.max), ypix(s.q3), ypix(s.q3), ypix(s.q1), bx + 2, box_w - 4,
            std::max(0.0, ypix(s.q1) - ypix(s.q3)), color, ypix(s.median), bx + box_w - 2);
        svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
                           mid, ypix(s.q1), ypix(s.min));
      }
    }
    svg += "</g>\n";
  }

  for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
    const double lx = 70.0 + 120.0 * static_cast<double>(ai);
    svg += fmt::format(
        "<rect x=\"{0}\" y=\"{1}\" width=\"14\" height=\"14\" fill=\"{2}\" fill-opacity=\"0.7\" stroke=\"black\"/>\n"
        "<text x=\"{3}\" y=\"{4}\">{5}</text>\n",
        lx, kHeight - 24, kPalette[ai % std::size(kPalette)], lx + 20, kHeight - 12,
        cli_name(spec.algorithms[ai]));
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::string> write_experiment(const ExperimentResult& result, const ExperimentSpec& spec,
                                          const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir);

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& body) {
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << body;
    if (!out) throw IoError("write failed for " + path);
    written.push_back(path);
  };
  emit("results.csv", results_csv(result));
  emit("summary.csv", summary_csv(result));
  for (const auto& fig : plan_figures(spec)) emit(fig.file, box_plot_svg(result, spec, fig));
  return written;
}

}  // namespace monoculus
