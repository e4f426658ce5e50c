#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "monoculus/geometry.hpp"
#include "monoculus/world.hpp"

namespace monoculus {

enum class AlgorithmId {
  ConvergeLocality,
  ConvergeQuadrant,
  ConvergeQuadrantTermination,
  NaiveMedian,
  NaiveAngleBisector,
  CentroidOracle,
};

/// CLI spelling: ld, ola, ola-term, median, bisector, oracle.
std::string_view cli_name(AlgorithmId id);
std::optional<AlgorithmId> parse_algorithm(std::string_view name);

/// False for the naive strategies and the full-information centroid baseline.
bool is_monoculus(AlgorithmId id);
bool uses_ola_frame(AlgorithmId id);
bool uses_memory(AlgorithmId id);

/// Compute-step output. The step length is the global b, not part of the decision.
class Decision {
 public:
  static Decision stay() { return Decision(); }
  static Decision move(const UnitVector& dir) { return Decision(dir); }

  bool is_move() const { return dir_.has_value(); }
  const UnitVector& direction() const { return *dir_; }

  friend bool operator==(const Decision&, const Decision&) = default;

 private:
  Decision() = default;
  explicit Decision(const UnitVector& dir) : dir_(dir) {}
  std::optional<UnitVector> dir_;
};

enum class TieBreakMode { Lexicographic, Seeded };

/// Resolves "move towards any one of ..." choices. Both modes are pure functions
/// of the candidate list, so equal observations always give equal decisions.
struct TieBreak {
  TieBreakMode mode = TieBreakMode::Lexicographic;
  std::uint64_t seed = 0;

  /// Index into a non-empty candidate list.
  std::size_t pick(std::span<const UnitVector> candidates) const;
};

struct AlgorithmOptions {
  TieBreak tie_break;
  /// Corner robots move along the local diagonal of their empty-sided axes.
  bool corner_diagonal = false;
};

Decision converge_locality(const LdObservation& obs, const AlgorithmOptions& opts = {});

/// Decision in the robot's local frame.
Decision converge_quadrant(const OlaObservation& obs, const AlgorithmOptions& opts = {});

struct TerminationStep {
  Decision decision;
  RobotMemory memory;
};

TerminationStep converge_quadrant_termination(const OlaObservation& obs, RobotMemory memory,
                                              const AlgorithmOptions& opts = {});

/// Angular order used by the naive strategies: directions sorted by angle,
/// starting just after the widest empty angular gap. Planar only.
std::vector<UnitVector> angular_order(const DirectionObservation& obs);

Decision naive_median(const DirectionObservation& obs);
Decision naive_angle_bisector(const DirectionObservation& obs);

struct OracleMetrics {
  double d_opt = 0.0;  // sum over robots of max(d_i - 1, 0), d_i = distance to centroid
  double d_max = 0.0;  // largest d_i
};

OracleMetrics centroid_oracle_metrics(std::span<const Point> positions);

/// Full-information baseline: step towards the centroid while outside its unit disc.
Decision centroid_oracle(const Configuration& config, std::size_t robot);

}  // namespace monoculus
