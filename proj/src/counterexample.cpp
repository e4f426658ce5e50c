#include "monoculus/counterexample.hpp"

#include <cmath>
#include <stdexcept>

#include "monoculus/engine.hpp"
#include "monoculus/rng.hpp"

#ifndef MONOCULUS_DATA_DIR
#define MONOCULUS_DATA_DIR "data"
#endif

namespace monoculus {

RoundOutcome fsync_round(const Configuration& config, AlgorithmId algo, double b, double c) {
  if (config.dim() != 2) throw UnsupportedDimension("counterexample rounds are planar");
  SimulationParams params;
  params.algorithm = algo;
  params.b = b;
  params.c = c;

  Configuration after = config;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const RobotState state{AxisFrame::identity(2), RobotMemory(2)};
    const ComputeResult r = look_compute(config, i, state, params);
    if (r.decision.is_move()) after.set_position(i, config.position(i) + b * r.decision.direction().vec());
  }
  after.set_time(config.time() + 1);
  return {config, after, hull_area(convex_hull(config.positions())), hull_area(convex_hull(after.positions()))};
}

std::optional<Configuration> search_counterexample(AlgorithmId strategy, std::uint64_t seed, std::size_t budget) {
  if (strategy != AlgorithmId::NaiveMedian && strategy != AlgorithmId::NaiveAngleBisector) {
    throw std::invalid_argument("counterexample search needs a naive strategy");
  }
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    const double h = rng.uniform(0.3, 1.5);
    const double jitter = 0.25 * h;
    std::vector<Point> pts;
    for (const auto& [sx, sy] : {std::pair{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}) {
      pts.push_back({sx * h + rng.uniform(-jitter, jitter), sy * h + rng.uniform(-jitter, jitter)});
    }
    const std::size_t inner = 1 + rng.uniform_index(4);
    for (std::size_t k = 0; k < inner; ++k) {
      pts.push_back({rng.uniform(-0.6 * h, 0.6 * h), rng.uniform(-0.6 * h, 0.6 * h)});
    }
    Configuration config(std::move(pts));
    if (fsync_round(config, strategy).area_increased()) return config;
  }
  return std::nullopt;
}

std::string default_fixture_path(AlgorithmId strategy) {
  return std::string(MONOCULUS_DATA_DIR) + "/fixtures/counterexample_" + std::string(cli_name(strategy)) + ".csv";
}

}  // namespace monoculus
