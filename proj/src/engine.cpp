#include "monoculus/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "monoculus/rng.hpp"

namespace monoculus {

void SimulationParams::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (!(b > 0.0) || !std::isfinite(b)) fail("step size b must be positive");
  if (!(c > 0.0) || !std::isfinite(c)) fail("locality threshold c must be positive");
  if (algorithm == AlgorithmId::ConvergeLocality && c < 2.0 * b) {
    fail(fmt::format("LD requires c >= 2b (got c={}, b={})", c, b));
  }
  if (!initial) {
    if (n < 2) fail("at least two robots are required");
    if (dim < 2 || dim > kMaxDim) fail(fmt::format("dimension must be in [2, {}]", kMaxDim));
    if (!(side > 0.0) || !std::isfinite(side)) fail("deployment side must be positive");
  }
  if ((algorithm == AlgorithmId::NaiveMedian || algorithm == AlgorithmId::NaiveAngleBisector) &&
      dimension() != 2) {
    fail("the naive strategies are planar only");
  }
  if (max_events == 0) fail("max-events must be positive");
  if (!(ssync_activation > 0.0 && ssync_activation <= 1.0)) fail("SSYNC activation must be in (0, 1]");
  if (initial_memory && initial_memory->size() != robots()) fail("initial memory needs one entry per robot");
  if (perturbation && !(perturbation->magnitude >= 0.0)) fail("perturbation magnitude must be >= 0");
}

bool converged_predicate(const Configuration& config, const SimulationParams& params) {
  if (uses_ola_frame(params.algorithm)) {
    const BoundingBox box = bounding_box(config.positions());
    for (std::size_t k = 0; k < config.dim(); ++k) {
      if (box.extent(k) > 2.0 * params.b) return false;
    }
    return true;
  }
  return max_pairwise_distance(config.positions()) <= 2.0 * params.c;
}

namespace {

Decision to_world(const Decision& local, const AxisFrame& frame) {
  if (!local.is_move()) return local;
  return Decision::move(frame.to_world(local.direction()));
}

bool all_sides_occupied(const std::array<SideOccupancy, kMaxDim>& sides, std::size_t dim) {
  for (std::size_t k = 0; k < dim; ++k) {
    if (sides[k] != SideOccupancy::Both) return false;
  }
  return true;
}

}  // namespace

ComputeResult look_compute(const Configuration& snapshot, std::size_t robot, const RobotState& state,
                           const SimulationParams& params) {
  const RobotMemory& mem = state.memory;
  switch (params.algorithm) {
    case AlgorithmId::CentroidOracle:
      return {centroid_oracle(snapshot, robot), mem};
    case AlgorithmId::ConvergeLocality: {
      const LdObservation obs = sense_ld(snapshot, robot, params.c);
      if (obs.sightings.empty()) return {Decision::stay(), mem};
      return {converge_locality(obs, params.options), mem};
    }
    case AlgorithmId::ConvergeQuadrant:
    case AlgorithmId::ConvergeQuadrantTermination: {
      // Inner robots stay and set no bits whatever else they see.
      if (!params.reference_sensing &&
          all_sides_occupied(side_occupancy(snapshot, robot, state.frame), snapshot.dim())) {
        return {Decision::stay(), mem};
      }
      const OlaObservation obs = sense_ola(snapshot, robot, state.frame);
      if (obs.directions.empty()) return {Decision::stay(), mem};
      if (params.algorithm == AlgorithmId::ConvergeQuadrant) {
        return {to_world(converge_quadrant(obs, params.options), state.frame), mem};
      }
      const TerminationStep step = converge_quadrant_termination(obs, mem, params.options);
      return {to_world(step.decision, state.frame), step.memory};
    }
    case AlgorithmId::NaiveMedian:
    case AlgorithmId::NaiveAngleBisector: {
      const DirectionObservation obs = sense_directions(snapshot, robot);
      if (obs.directions.empty()) return {Decision::stay(), mem};
      return {params.algorithm == AlgorithmId::NaiveMedian ? naive_median(obs) : naive_angle_bisector(obs),
              mem};
    }
  }
  return {Decision::stay(), mem};
}

Configuration perturb(const Configuration& config, std::uint64_t seed, double magnitude) {
  if (!(magnitude >= 0.0)) throw std::invalid_argument("perturbation magnitude must be >= 0");
  Rng rng(seed);
  Configuration out = config;
  const std::size_t d = config.dim();
  for (std::size_t i = 0; i < config.size(); ++i) {
    Point v(d);
    do {  // uniform in the unit ball by rejection
      for (std::size_t k = 0; k < d; ++k) v[k] = rng.uniform(-1.0, 1.0);
    } while (norm(v) > 1.0);
    out.set_position(i, config.position(i) + v * magnitude);
  }
  return out;
}

void corrupt_memory(std::vector<RobotMemory>& memories, std::uint64_t seed) {
  Rng rng(seed);
  for (auto& m : memories) m.assign_bits(static_cast<std::uint32_t>(rng.next_u64()));
}

namespace {

class Simulation {
 public:
  Simulation(const SimulationParams& params, const RunHooks& hooks)
      : p_(params),
        hooks_(hooks),
        config_(params.initial ? *params.initial
                               : deploy_uniform(params.n, params.dim, params.side,
                                                derive_seed(params.seed, kStreamDeployment))),
        sched_(ScheduleSpec{params.scheduler, derive_seed(params.seed, kStreamSchedule), params.fairness,
                            params.ssync_activation},
               config_.size()),
        window_(params.window()),
        result_{.initial = config_,
                .final_config = config_,
                .memories = {},
                .frames = {},
                .hull_perimeters = {},
                .trace = {}} {
    Rng frame_rng(derive_seed(params.seed, kStreamFrames));
    const std::size_t d = config_.dim();
    robots_.reserve(config_.size());
    for (std::size_t i = 0; i < config_.size(); ++i) {
      RobotState s{AxisFrame::random(d, frame_rng), RobotMemory(d)};
      if (params.initial_memory) s.memory.assign_bits((*params.initial_memory)[i]);
      robots_.push_back(s);
    }
  }

  RunResult run() {
    checkpoint(/*changed=*/true);
    if (p_.scheduler == SchedulerModel::Async) {
      run_async();
    } else {
      run_sync();
    }
    return finish();
  }

 private:
  bool done() const {
    if (quiescent_) return true;
    if (uses_memory(p_.algorithm)) return false;
    return streak_len_ >= window_;
  }

  void maybe_perturb() {
    if (!p_.perturbation || perturbed_ || event_ < p_.perturbation->at_event) return;
    perturbed_ = true;
    const PerturbationSpec& ps = *p_.perturbation;
    config_ = perturb(config_, derive_seed(ps.seed, kStreamPerturb), ps.magnitude);
    if (ps.corrupt_memory && uses_memory(p_.algorithm)) {
      std::vector<RobotMemory> mems;
      for (const auto& r : robots_) mems.push_back(r.memory);
      corrupt_memory(mems, ps.seed);
      for (std::size_t i = 0; i < robots_.size(); ++i) robots_[i].memory = mems[i];
    }
    changed_since_check_ = true;
  }

  void record(std::size_t robot, TracePhase phase, const Decision& d, const Point& before, const Point& after) {
    if (!p_.record_trace) return;
    TraceRecord rec;
    rec.event = event_;
    rec.round = checks_;
    rec.robot = robot;
    rec.phase = phase;
    if (d.is_move()) rec.direction = d.direction();
    rec.before = before;
    rec.after = after;
    rec.work_cum = work_;
    result_.trace.push_back(std::move(rec));
  }

  Point step(const Point& from, const Decision& d) const {
    return d.is_move() ? from + d.direction().vec() * p_.b : from;
  }

  // Whether every robot would stay put (and keep its memory) on the current configuration.
  bool fixed_point() const {
    for (std::size_t i = 0; i < config_.size(); ++i) {
      const ComputeResult r = look_compute(config_, i, robots_[i], p_);
      if (r.decision.is_move() || !(r.memory == robots_[i].memory)) return false;
    }
    return true;
  }

  // Convergence bookkeeping after the initial state and after every round/epoch.
  void checkpoint(bool changed) {
    const bool holds = converged_predicate(config_, p_);
    if (holds) {
      if (streak_len_ == 0) {
        streak_start_ = checks_;
        work_at_streak_ = work_;
      }
      ++streak_len_;
    } else {
      streak_len_ = 0;
    }
    last_holds_ = holds;
    if (config_.dim() == 2) result_.hull_perimeters.push_back(hull_perimeter(convex_hull(config_.positions())));
    if (!changed) quiescent_ = pending_all_stay() && fixed_point();
  }

  bool pending_all_stay() const {
    return std::none_of(pending_.begin(), pending_.end(),
                        [](const std::optional<Decision>& d) { return d && d->is_move(); });
  }

  void run_sync() {
    const std::size_t n = config_.size();
    while (!done()) {
      if (event_ >= p_.max_events) {
        result_.cap_reached = true;
        return;
      }
      maybe_perturb();
      const std::vector<std::size_t> active = sched_.next_round();
      const Configuration snapshot = config_;
      const bool converged_before = last_holds_;

      std::vector<ComputeResult> decisions;
      decisions.reserve(active.size());
      for (std::size_t i : active) decisions.push_back(look_compute(snapshot, i, robots_[i], p_));

      bool changed = changed_since_check_;
      for (std::size_t a = 0; a < active.size(); ++a) {
        const std::size_t i = active[a];
        const ComputeResult& r = decisions[a];
        const Point& before = snapshot.position(i);
        const Point after = step(before, r.decision);
        if (r.decision.is_move()) {
          ++work_;
          changed = true;
        }
        if (!(r.memory == robots_[i].memory)) changed = true;
        robots_[i].memory = r.memory;
        config_.set_position(i, after);
        record(i, TracePhase::Activate, r.decision, before, after);
        ++event_;
      }
      config_.set_time(event_);
      ++checks_;
      changed_since_check_ = false;
      if (hooks_.on_step) hooks_.on_step({snapshot, config_, checks_, converged_before});

      // An all-robot round in which nobody moved already proves the fixed point.
      if (!changed && active.size() == n) {
        checkpoint(true);
        quiescent_ = true;
      } else {
        checkpoint(changed);
      }
    }
  }

  void run_async() {
    const std::size_t n = config_.size();
    pending_.assign(n, std::nullopt);
    std::vector<bool> looked(n, false);
    std::vector<bool> cycled(n, false);
    std::size_t cycled_count = 0;
    bool changed = false;

    while (!done()) {
      if (event_ >= p_.max_events) {
        result_.cap_reached = true;
        return;
      }
      maybe_perturb();
      changed = changed || changed_since_check_;
      changed_since_check_ = false;

      const PhaseEvent ev = sched_.next_event();
      const std::size_t i = ev.robot;
      const Point here = config_.position(i);
      if (ev.phase == Phase::Look) {
        ComputeResult r = look_compute(config_, i, robots_[i], p_);
        if (!(r.memory == robots_[i].memory)) changed = true;
        robots_[i].memory = r.memory;
        record(i, TracePhase::Look, r.decision, here, here);
        pending_[i] = r.decision;
        looked[i] = true;
        ++event_;
        continue;
      }

      const Decision d = pending_[i].value_or(Decision::stay());
      pending_[i].reset();
      const Point after = step(here, d);
      std::optional<Configuration> before;
      if (hooks_.on_step) before = config_;
      if (d.is_move()) {
        ++work_;
        changed = true;
      }
      config_.set_position(i, after);
      record(i, TracePhase::Move, d, here, after);
      ++event_;
      config_.set_time(event_);
      if (hooks_.on_step) hooks_.on_step({*before, config_, checks_, last_holds_});

      if (looked[i] && !cycled[i]) {
        cycled[i] = true;
        ++cycled_count;
      }
      if (cycled_count == n) {
        ++checks_;
        checkpoint(changed);
        changed = false;
        std::fill(looked.begin(), looked.end(), false);
        std::fill(cycled.begin(), cycled.end(), false);
        // Robots that looked during the finished epoch but have not moved yet
        // start the next epoch already committed; a later Look is required to
        // count towards it.
        cycled_count = 0;
      }
    }
  }

  RunResult finish() {
    result_.quiescent = quiescent_;
    result_.rounds_executed = checks_;
    result_.events = event_;
    result_.work_total = work_;
    result_.final_config = config_;
    const bool holds = streak_len_ > 0;
    if (uses_memory(p_.algorithm)) {
      result_.converged = quiescent_ && holds;
    } else {
      result_.converged = holds && (quiescent_ || streak_len_ >= window_);
    }
    result_.rounds = result_.converged ? streak_start_ : checks_;
    result_.work = result_.converged ? work_at_streak_ : work_;
    for (const auto& r : robots_) {
      result_.memories.push_back(r.memory);
      result_.frames.push_back(r.frame);
    }
    result_.all_stopped = uses_memory(p_.algorithm) &&
                          std::all_of(robots_.begin(), robots_.end(),
                                      [](const RobotState& r) { return r.memory.all_set(); });
    return std::move(result_);
  }

  const SimulationParams& p_;
  const RunHooks& hooks_;
  Configuration config_;
  Scheduler sched_;
  std::size_t window_;
  RunResult result_;
  std::vector<RobotState> robots_;
  std::vector<std::optional<Decision>> pending_;

  std::uint64_t event_ = 0;
  std::uint64_t checks_ = 0;
  std::uint64_t work_ = 0;
  std::uint64_t streak_start_ = 0;
  std::uint64_t streak_len_ = 0;
  std::uint64_t work_at_streak_ = 0;
  bool last_holds_ = false;
  bool quiescent_ = false;
  bool perturbed_ = false;
  bool changed_since_check_ = false;
};

}  // namespace

RunResult run(const SimulationParams& params, const RunHooks& hooks) {
  params.validate();
  return Simulation(params, hooks).run();
}

}  // namespace monoculus
