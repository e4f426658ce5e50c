#include "monoculus/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace monoculus {

std::string_view cli_name(SchedulerModel model) {
  switch (model) {
    case SchedulerModel::FSync: return "fsync";
    case SchedulerModel::SSync: return "ssync";
    case SchedulerModel::Async: return "async";
  }
  return "?";
}

std::optional<SchedulerModel> parse_scheduler(std::string_view name) {
  if (name == "fsync") return SchedulerModel::FSync;
  if (name == "ssync") return SchedulerModel::SSync;
  if (name == "async") return SchedulerModel::Async;
  return std::nullopt;
}

Scheduler::Scheduler(const ScheduleSpec& spec, std::size_t n)
    : spec_(spec), n_(n), rng_(spec.seed) {
  if (n < 2) throw std::invalid_argument("scheduler needs at least two robots");
  const std::size_t default_k = spec.model == SchedulerModel::Async ? 6 * n : 3 * n;
  fairness_ = spec.fairness == 0 ? default_k : spec.fairness;
  if (spec.model == SchedulerModel::Async && fairness_ < 4 * n) {
    throw std::invalid_argument("ASYNC fairness bound must be at least 4n events");
  }
  last_active_.assign(n, -1);
  next_phase_.assign(n, Phase::Look);
  last_look_.assign(n, -1);
  prev_look_.assign(n, -1);
}

std::vector<std::size_t> Scheduler::next_round() {
  if (spec_.model == SchedulerModel::Async) throw std::logic_error("next_round on an ASYNC schedule");
  std::vector<std::size_t> active;
  const auto k = static_cast<std::int64_t>(fairness_);
  for (std::size_t i = 0; i < n_; ++i) {
    const bool chosen = spec_.model == SchedulerModel::FSync || rng_.bernoulli(spec_.ssync_activation);
    if (chosen || round_ - last_active_[i] >= k) active.push_back(i);
  }
  if (active.empty()) active.push_back(static_cast<std::size_t>(rng_.uniform_index(n_)));
  for (std::size_t i : active) last_active_[i] = round_;
  ++round_;
  return active;
}

// Remaining room before robot `robot` would violate the window guarantee.
// With looks l_1 < l_2 < ... and moves m_j, the guarantee is m_{j+1} <= l_j + K
// (l_0 = -1): after each Look the next complete cycle must end within K events.
std::int64_t Scheduler::slack(std::size_t robot, std::int64_t now) const {
  const auto k = static_cast<std::int64_t>(fairness_);
  auto room = [&](std::int64_t deadline, std::int64_t demand) { return deadline - now + 1 - demand; };
  if (next_phase_[robot] == Phase::Look) return room(last_look_[robot] + k, 2);
  return std::min(room(prev_look_[robot] + k, 1), room(last_look_[robot] + k, 3));
}

PhaseEvent Scheduler::next_event() {
  if (spec_.model != SchedulerModel::Async) throw std::logic_error("next_event on a synchronous schedule");
  const auto threshold = static_cast<std::int64_t>(2 * n_);

  std::size_t urgent = n_;
  std::int64_t least = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < n_; ++i) {
    const std::int64_t s = slack(i, event_);
    // On ties a pending Move goes first: an early Look only pulls the next deadline in.
    const bool move_wins = s == least && next_phase_[i] == Phase::Move && next_phase_[urgent] == Phase::Look;
    if (s < least || move_wins) {
      least = s;
      urgent = i;
    }
  }
  if (least < 0) throw std::logic_error("ASYNC fairness bound violated");
  const std::size_t robot =
      least <= threshold ? urgent : static_cast<std::size_t>(rng_.uniform_index(n_));

  const PhaseEvent ev{robot, next_phase_[robot]};
  if (ev.phase == Phase::Look) {
    prev_look_[robot] = last_look_[robot];
    last_look_[robot] = event_;
    next_phase_[robot] = Phase::Move;
  } else {
    next_phase_[robot] = Phase::Look;
  }
  ++event_;
  return ev;
}

}  // namespace monoculus
