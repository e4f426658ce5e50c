#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monoculus/engine.hpp"
#include "monoculus/metrics.hpp"

namespace monoculus {

/// A sweep over robot counts and deployment sides. Every cell (n, side, algo)
/// runs `trials` seeded trials; algorithms of one (n, side, trial) share the
/// same initial configuration.
struct ExperimentSpec {
  std::vector<std::size_t> n_values{10, 25, 50, 100};
  std::vector<double> sides{50.0, 100.0, 200.0};
  std::size_t trials = 100;
  std::vector<AlgorithmId> algorithms{AlgorithmId::ConvergeLocality};
  SimulationParams base;  // b, c, dim, scheduler, options, caps
  std::uint64_t base_seed = 1;
  std::size_t threads = 0;  // 0: hardware concurrency
};

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n, double side, std::size_t trial);

struct TrialRecord {
  std::size_t n = 0;
  double side = 0.0;
  AlgorithmId algorithm = AlgorithmId::ConvergeLocality;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  bool all_stopped = false;
  RunMetrics metrics;
};

struct CellRecord {
  std::size_t n = 0;
  double side = 0.0;
  AlgorithmId algorithm = AlgorithmId::ConvergeLocality;
  std::size_t converged = 0;
  MetricsSummary summary;
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;  // ordered by (n, side, algo, trial)
  std::vector<CellRecord> cells;    // ordered by (n, side, algo)

  const CellRecord* cell(std::size_t n, double side, AlgorithmId algo) const;
};

/// Throws std::invalid_argument for an empty sweep. Trials may run on several
/// threads; the result order never depends on scheduling.
ExperimentResult run_experiment(const ExperimentSpec& spec);

std::string results_csv(const ExperimentResult& result);
std::string summary_csv(const ExperimentResult& result);

/// One box-plot figure: rho and tau distributions against n (at a fixed side)
/// or against side (at a fixed n), one box per algorithm.
struct FigurePlan {
  enum class Axis { RobotCount, Side };
  Axis x = Axis::RobotCount;
  double fixed = 0.0;
  std::string file;
};

/// x = n for every side when n varies, x = side for every n when the side
/// varies; a single-cell sweep yields one x = n figure.
std::vector<FigurePlan> plan_figures(const ExperimentSpec& spec);

std::string box_plot_svg(const ExperimentResult& result, const ExperimentSpec& spec, const FigurePlan& figure);

/// Writes results.csv, summary.csv and the SVG figures into `dir` (created if
/// needed). Returns the written paths. Throws IoError on any write failure.
std::vector<std::string> write_experiment(const ExperimentResult& result, const ExperimentSpec& spec,
                                          const std::string& dir);

}  // namespace monoculus
