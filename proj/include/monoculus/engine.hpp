#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "monoculus/algorithms.hpp"
#include "monoculus/geometry.hpp"
#include "monoculus/scheduler.hpp"
#include "monoculus/world.hpp"

namespace monoculus {

inline constexpr std::uint64_t kDefaultMaxEvents = 10'000'000;

/// One-off state corruption applied before the event with index `at_event`.
struct PerturbationSpec {
  std::uint64_t at_event = 0;
  double magnitude = 0.0;
  std::uint64_t seed = 0;
  /// Termination variant only: overwrite every memory bit with a random value.
  bool corrupt_memory = false;
};

struct SimulationParams {
  AlgorithmId algorithm = AlgorithmId::ConvergeLocality;
  SchedulerModel scheduler = SchedulerModel::FSync;
  std::size_t fairness = 0;  // 0: scheduler default
  double ssync_activation = 0.5;

  double b = 1.0;  // step size
  double c = 2.0;  // locality threshold, c >= 2b for LD
  std::size_t n = 10;
  std::size_t dim = 2;
  double side = 100.0;  // uniform deployment in [0, side]^dim
  std::uint64_t seed = 0;

  std::uint64_t max_events = kDefaultMaxEvents;
  std::size_t stability_window = 0;  // W; 0 selects 5n

  AlgorithmOptions options;
  /// Always resolve OLA observations through full occlusion sensing instead of
  /// short-circuiting robots whose axis sides are all occupied.
  bool reference_sensing = false;

  std::optional<Configuration> initial;                 // overrides n/dim/side deployment
  std::optional<std::vector<std::uint32_t>> initial_memory;  // termination bits per robot
  std::optional<PerturbationSpec> perturbation;

  bool record_trace = true;

  std::size_t robots() const { return initial ? initial->size() : n; }
  std::size_t dimension() const { return initial ? initial->dim() : dim; }
  std::size_t window() const { return stability_window == 0 ? 5 * robots() : stability_window; }

  /// Throws std::invalid_argument on inconsistent parameters (e.g. LD with c < 2b).
  void validate() const;
};

enum class TracePhase { Activate, Look, Move };

/// One trace row. Synchronous rounds log one Activate row per active robot;
/// ASYNC logs Look rows (no displacement) and Move rows.
struct TraceRecord {
  std::uint64_t event = 0;
  std::uint64_t round = 0;
  std::size_t robot = 0;
  TracePhase phase = TracePhase::Activate;
  std::optional<UnitVector> direction;  // world-frame move direction, if any
  Point before;
  Point after;
  std::uint64_t work_cum = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct RunResult {
  bool converged = false;
  /// Completed rounds (ASYNC: epochs in which every robot finished a cycle) at
  /// the start of the final stable streak of the convergence predicate.
  std::uint64_t rounds = 0;
  std::uint64_t rounds_executed = 0;
  /// Displacing moves up to `rounds`; work_total counts the whole run.
  std::uint64_t work = 0;
  std::uint64_t work_total = 0;
  std::uint64_t events = 0;
  bool quiescent = false;     // ended in a fixed point: every decision is Stay
  bool cap_reached = false;
  bool all_stopped = false;   // termination variant: every robot has all bits set

  Configuration initial;
  Configuration final_config;
  std::vector<RobotMemory> memories;
  std::vector<AxisFrame> frames;
  std::vector<double> hull_perimeters;  // 2D only: per check point, starting with the initial config
  std::vector<TraceRecord> trace;
};

/// Called after every synchronous round and after every ASYNC Move event.
struct StepView {
  const Configuration& before;
  const Configuration& after;
  std::uint64_t round;
  bool converged_before;
};

struct RunHooks {
  std::function<void(const StepView&)> on_step;
};

/// Convergence predicate: LD and the baselines need max pairwise distance <= 2c,
/// the OLA algorithms need every bounding-box extent <= 2b.
bool converged_predicate(const Configuration& config, const SimulationParams& params);

/// Per-robot state the simulator keeps outside the oblivious decision function.
struct RobotState {
  AxisFrame frame;
  RobotMemory memory;
};

struct ComputeResult {
  Decision decision;  // world frame
  RobotMemory memory;
};

/// Look + Compute for one robot against a snapshot.
ComputeResult look_compute(const Configuration& snapshot, std::size_t robot, const RobotState& state,
                           const SimulationParams& params);

/// Displaces each robot by a seeded vector of norm <= magnitude.
Configuration perturb(const Configuration& config, std::uint64_t seed, double magnitude);

/// Overwrites every bit with a seeded random value.
void corrupt_memory(std::vector<RobotMemory>& memories, std::uint64_t seed);

/// Runs until the predicate holds for W consecutive checks, a non-converging
/// fixed point, or the event cap. The termination variant ends only at its
/// fixed point (or the cap). Not converging is a result, not an error.
RunResult run(const SimulationParams& params, const RunHooks& hooks = {});

}  // namespace monoculus
