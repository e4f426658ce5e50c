#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "monoculus/engine.hpp"
#include "monoculus/world.hpp"

namespace monoculus {

/// Performance figures of one run, measured against the centroid oracle on the
/// initial configuration.
struct RunMetrics {
  double d_opt = 0.0;
  double d_max = 0.0;
  std::uint64_t work = 0;    // displacing moves until convergence
  std::uint64_t rounds = 0;  // rounds (ASYNC: epochs) until convergence
  std::optional<double> rho;  // work / d_opt, absent when d_opt == 0
  std::optional<double> tau;  // rounds / d_max, absent when d_max == 0
  std::vector<double> hull_perimeters;
};

RunMetrics compute_metrics(const RunResult& run, const Configuration& initial);

/// Guaranteed hull-perimeter decrease per activation epoch for n robots:
/// b * (1 - sqrt((1 + cos(2*pi/n)) / 2)). Throws std::domain_error for n < 3 or b <= 0.
double lemma3_bound(std::size_t n, double b);

struct FiveNumberSummary {
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Quartiles by linear interpolation between order statistics (position p*(n-1)).
/// Throws std::invalid_argument on an empty sample.
FiveNumberSummary five_number_summary(std::vector<double> values);

struct MetricsSummary {
  std::size_t runs = 0;
  std::optional<FiveNumberSummary> rho;  // over runs where rho is defined
  std::optional<FiveNumberSummary> tau;
  FiveNumberSummary work;
  FiveNumberSummary rounds;
  FiveNumberSummary d_opt;
  FiveNumberSummary d_max;
};

/// Throws std::invalid_argument on an empty list.
MetricsSummary aggregate(std::span<const RunMetrics> metrics);

}  // namespace monoculus
