#include "monoculus/algorithms.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "monoculus/rng.hpp"

namespace monoculus {

namespace {

constexpr std::array<std::pair<AlgorithmId, std::string_view>, 6> kNames{{
    {AlgorithmId::ConvergeLocality, "ld"},
    {AlgorithmId::ConvergeQuadrant, "ola"},
    {AlgorithmId::ConvergeQuadrantTermination, "ola-term"},
    {AlgorithmId::NaiveMedian, "median"},
    {AlgorithmId::NaiveAngleBisector, "bisector"},
    {AlgorithmId::CentroidOracle, "oracle"},
}};

// Two corner candidates whose diagonal scores differ by less than this are tied.
constexpr double kScoreTieTol = 1e-12;

void require_nonempty(std::size_t n) {
  if (n == 0) throw InvalidObservation("empty observation");
}

// Sighting the corner robot heads for: strictly inside the orthant spanned by
// `axes` when one exists, nearest to the orthant diagonal, then the tie-break.
// Scoring by |component| commutes with signed axis permutations, so the choice
// maps consistently between local frames.
UnitVector corner_target(const OlaObservation& obs, const OlaClassification& cls,
                         std::span<const std::size_t> axes, const TieBreak& tb) {
  std::vector<UnitVector> strict;
  for (const auto& u : obs.directions) {
    const bool inside = std::all_of(axes.begin(), axes.end(), [&](std::size_t k) {
      return u[k] * cls.inward(k) > kAxisTol;
    });
    if (inside) strict.push_back(u);
  }
  const std::vector<UnitVector>& pool = strict.empty() ? obs.directions : strict;

  auto score = [&](const UnitVector& u) {
    double s = 1.0;
    for (std::size_t k : axes) s = std::min(s, std::abs(u[k]));
    return s;
  };
  double best = 0.0;
  for (const auto& u : pool) best = std::max(best, score(u));
  std::vector<UnitVector> tied;
  for (const auto& u : pool) {
    if (score(u) >= best - kScoreTieTol) tied.push_back(u);
  }
  return tied[tb.pick(tied)];
}

UnitVector diagonal(std::size_t dim, const OlaClassification& cls, std::span<const std::size_t> axes) {
  Point v(dim);
  for (std::size_t k : axes) v[k] = cls.inward(k);
  return UnitVector::from(v);
}

Decision corner_move(const OlaObservation& obs, const OlaClassification& cls,
                     std::span<const std::size_t> axes, const AlgorithmOptions& opts) {
  if (opts.corner_diagonal) return Decision::move(diagonal(cls.dim, cls, axes));
  return Decision::move(corner_target(obs, cls, axes, opts.tie_break));
}

double angle_of(const UnitVector& u) { return std::atan2(u[1], u[0]); }

}  // namespace

std::string_view cli_name(AlgorithmId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "?";
}

std::optional<AlgorithmId> parse_algorithm(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_monoculus(AlgorithmId id) {
  return id == AlgorithmId::ConvergeLocality || id == AlgorithmId::ConvergeQuadrant ||
         id == AlgorithmId::ConvergeQuadrantTermination;
}

bool uses_ola_frame(AlgorithmId id) {
  return id == AlgorithmId::ConvergeQuadrant || id == AlgorithmId::ConvergeQuadrantTermination;
}

bool uses_memory(AlgorithmId id) { return id == AlgorithmId::ConvergeQuadrantTermination; }

std::size_t TieBreak::pick(std::span<const UnitVector> candidates) const {
  if (candidates.empty()) throw std::invalid_argument("tie-break over no candidates");
  if (mode == TieBreakMode::Lexicographic) {
    return static_cast<std::size_t>(
        std::min_element(candidates.begin(), candidates.end(), lex_less) - candidates.begin());
  }
  // Order-independent: hash the sorted candidate set, then index the sorted set.
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(candidates[a], candidates[b]); });
  std::uint64_t h = mix64(seed);
  for (std::size_t i : order) {
    for (double x : candidates[i].coords()) h = mix64(h ^ std::bit_cast<std::uint64_t>(x));
  }
  return order[h % order.size()];
}

Decision converge_locality(const LdObservation& obs, const AlgorithmOptions& opts) {
  require_nonempty(obs.sightings.size());
  if (obs.sightings.size() == 1) return Decision::move(obs.sightings.front().direction);

  std::vector<UnitVector> far;
  for (const auto& s : obs.sightings) {
    if (s.is_far) far.push_back(s.direction);
  }
  if (far.empty()) return Decision::stay();
  return Decision::move(far[opts.tie_break.pick(far)]);
}

Decision converge_quadrant(const OlaObservation& obs, const AlgorithmOptions& opts) {
  require_nonempty(obs.directions.size());
  const OlaClassification cls = classify_ola(obs);
  switch (cls.kind) {
    case OlaClass::LineEnd:
      return Decision::move(obs.directions.front());
    case OlaClass::Boundary: {
      const std::size_t k = cls.boundary_axes().front();
      return Decision::move(UnitVector::axis(cls.dim, k, cls.inward(k)));
    }
    case OlaClass::Corner: {
      const auto axes = cls.boundary_axes();
      return corner_move(obs, cls, axes, opts);
    }
    case OlaClass::LineDegenerate:
    case OlaClass::Inner:
      return Decision::stay();
  }
  return Decision::stay();
}

TerminationStep converge_quadrant_termination(const OlaObservation& obs, RobotMemory memory,
                                              const AlgorithmOptions& opts) {
  require_nonempty(obs.directions.size());
  const OlaClassification cls = classify_ola(obs);
  if (memory.dim() != cls.dim) memory = RobotMemory(cls.dim);

  for (std::size_t k = 0; k < cls.dim; ++k) {
    switch (cls.sides[k]) {
      case SideOccupancy::LowEmpty: memory.set(k, -1); break;
      case SideOccupancy::HighEmpty: memory.set(k, +1); break;
      case SideOccupancy::BothEmpty:
        memory.set(k, -1);
        memory.set(k, +1);
        break;
      case SideOccupancy::Both: break;
    }
  }
  if (memory.all_set()) return {Decision::stay(), memory};

  switch (cls.kind) {
    case OlaClass::LineEnd: {
      Point v = obs.directions.front().vec();
      for (std::size_t k = 0; k < cls.dim; ++k) {
        if (memory.axis_closed(k)) v[k] = 0.0;
      }
      if (norm(v) <= kAxisTol) return {Decision::stay(), memory};
      return {Decision::move(UnitVector::from(v)), memory};
    }
    case OlaClass::Boundary: {
      const std::size_t k = cls.boundary_axes().front();
      if (memory.axis_closed(k)) return {Decision::stay(), memory};
      return {Decision::move(UnitVector::axis(cls.dim, k, cls.inward(k))), memory};
    }
    case OlaClass::Corner: {
      const auto axes = cls.boundary_axes();
      std::vector<std::size_t> open;
      for (std::size_t k : axes) {
        if (!memory.axis_closed(k)) open.push_back(k);
      }
      if (open.empty()) return {Decision::stay(), memory};
      if (open.size() == axes.size()) return {corner_move(obs, cls, axes, opts), memory};
      if (open.size() == 1) {
        return {Decision::move(UnitVector::axis(cls.dim, open.front(), cls.inward(open.front()))), memory};
      }
      if (opts.corner_diagonal) return {Decision::move(diagonal(cls.dim, cls, open)), memory};
      const UnitVector target = corner_target(obs, cls, open, opts.tie_break);
      Point v(cls.dim);
      for (std::size_t k : open) v[k] = target[k];
      if (norm(v) <= kAxisTol) {
        return {Decision::move(UnitVector::axis(cls.dim, open.front(), cls.inward(open.front()))), memory};
      }
      return {Decision::move(UnitVector::from(v)), memory};
    }
    case OlaClass::LineDegenerate:
    case OlaClass::Inner:
      return {Decision::stay(), memory};
  }
  return {Decision::stay(), memory};
}

std::vector<UnitVector> angular_order(const DirectionObservation& obs) {
  require_nonempty(obs.directions.size());
  if (obs.directions.front().dim() != 2) {
    throw UnsupportedDimension("naive strategies are planar only");
  }
  std::vector<UnitVector> dirs = obs.directions;
  std::sort(dirs.begin(), dirs.end(),
            [](const UnitVector& a, const UnitVector& b) { return angle_of(a) < angle_of(b); });
  if (dirs.size() < 2) return dirs;

  std::size_t widest = dirs.size() - 1;  // gap from the last back around to the first
  double widest_gap = angle_of(dirs.front()) + 2.0 * std::numbers::pi - angle_of(dirs.back());
  for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
    const double gap = angle_of(dirs[i + 1]) - angle_of(dirs[i]);
    if (gap > widest_gap) {
      widest_gap = gap;
      widest = i;
    }
  }
  std::rotate(dirs.begin(), dirs.begin() + static_cast<std::ptrdiff_t>((widest + 1) % dirs.size()),
              dirs.end());
  return dirs;
}

Decision naive_median(const DirectionObservation& obs) {
  const auto order = angular_order(obs);
  return Decision::move(order[(order.size() - 1) / 2]);
}

Decision naive_angle_bisector(const DirectionObservation& obs) {
  const auto order = angular_order(obs);
  if (order.size() == 1) return Decision::move(order.front());
  const double first = angle_of(order.front());
  double spread = angle_of(order.back()) - first;
  if (spread < 0.0) spread += 2.0 * std::numbers::pi;
  const double mid = first + spread / 2.0;
  return Decision::move(UnitVector::from(Point{std::cos(mid), std::sin(mid)}));
}

OracleMetrics centroid_oracle_metrics(std::span<const Point> positions) {
  const Point center = centroid(positions);
  OracleMetrics m;
  for (const auto& p : positions) {
    const double d = euclidean_distance(p, center);
    if (d > 1.0) m.d_opt += d - 1.0;
    m.d_max = std::max(m.d_max, d);
  }
  return m;
}

Decision centroid_oracle(const Configuration& config, std::size_t robot) {
  const Point delta = centroid(config.positions()) - config.position(robot);
  if (norm(delta) <= 1.0) return Decision::stay();
  return Decision::move(UnitVector::from(delta));
}

}  // namespace monoculus
