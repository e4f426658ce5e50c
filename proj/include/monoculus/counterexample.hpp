#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "monoculus/algorithms.hpp"
#include "monoculus/world.hpp"

namespace monoculus {

/// One FSYNC round of a planar strategy and the hull areas around it.
struct RoundOutcome {
  Configuration before;
  Configuration after;
  double area_before = 0.0;
  double area_after = 0.0;

  bool area_increased(double tol = 1e-9) const { return area_after > area_before + tol; }
};

/// Every robot decides on `config` with the identity frame, then all move b.
RoundOutcome fsync_round(const Configuration& config, AlgorithmId algo, double b = 1.0, double c = 2.0);

/// Jittered squares with 1 to 4 inner robots, tried until one FSYNC round of
/// `strategy` strictly grows the hull area. nullopt when the budget runs out.
std::optional<Configuration> search_counterexample(AlgorithmId strategy, std::uint64_t seed,
                                                   std::size_t budget = 100'000);

/// data/fixtures/counterexample_<strategy>.csv in the source tree.
std::string default_fixture_path(AlgorithmId strategy);

}  // namespace monoculus
