#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "monoculus/rng.hpp"

namespace monoculus {

enum class SchedulerModel { FSync, SSync, Async };

std::string_view cli_name(SchedulerModel model);
std::optional<SchedulerModel> parse_scheduler(std::string_view name);

enum class Phase { Look, Move };

/// One ASYNC event. Compute is folded into Look: the decision is taken from the
/// snapshot seen at Look and applied, possibly stale, at the matching Move.
struct PhaseEvent {
  std::size_t robot;
  Phase phase;

  friend bool operator==(const PhaseEvent&, const PhaseEvent&) = default;
};

struct ScheduleSpec {
  SchedulerModel model = SchedulerModel::FSync;
  std::uint64_t seed = 0;
  /// Fairness bound K; 0 selects the default (3n rounds, 6n events).
  std::size_t fairness = 0;
  /// Per-robot activation probability of an SSYNC round before fairness forcing.
  double ssync_activation = 0.5;
};

/// Seeded activation plan. Streams are pure functions of (spec, n).
///
/// SSYNC: every robot is active at least once in any K consecutive rounds.
/// ASYNC: every robot completes a whole Look+Move cycle inside any window of K
/// events. Robots are drawn uniformly at random; a robot whose slack towards
/// that guarantee drops to 2n is served first (earliest deadline first).
class Scheduler {
 public:
  Scheduler(const ScheduleSpec& spec, std::size_t n);

  SchedulerModel model() const { return spec_.model; }
  std::size_t robots() const { return n_; }
  std::size_t fairness_bound() const { return fairness_; }

  /// FSYNC / SSYNC: indices activated in the next round, ascending.
  std::vector<std::size_t> next_round();

  /// ASYNC only.
  PhaseEvent next_event();

 private:
  std::int64_t slack(std::size_t robot, std::int64_t now) const;

  ScheduleSpec spec_;
  std::size_t n_;
  std::size_t fairness_;
  Rng rng_;

  // SSYNC state
  std::int64_t round_ = 0;
  std::vector<std::int64_t> last_active_;

  // ASYNC state
  std::int64_t event_ = 0;
  std::vector<Phase> next_phase_;
  std::vector<std::int64_t> last_look_;
  std::vector<std::int64_t> prev_look_;
};

}  // namespace monoculus
