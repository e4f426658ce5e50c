#pragma once

// Seeded generators shared by the property tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "monoculus/geometry.hpp"
#include "monoculus/rng.hpp"
#include "monoculus/world.hpp"

namespace monoculus::testing {

inline std::vector<Point> random_points(Rng& rng, std::size_t n, std::size_t dim = 2, double lo = 0.0,
                                        double hi = 1.0) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p(dim);
    for (std::size_t k = 0; k < dim; ++k) p[k] = rng.uniform(lo, hi);
    pts.push_back(p);
  }
  return pts;
}

inline Configuration random_config(Rng& rng, std::size_t n, std::size_t dim = 2, double side = 10.0) {
  return Configuration(random_points(rng, n, dim, 0.0, side));
}

/// Integer lattice points, so that hull tests can use exact arithmetic.
inline std::vector<Point> lattice_points(Rng& rng, std::size_t n, int range) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({static_cast<double>(rng.uniform_index(static_cast<std::uint64_t>(range))),
                   static_cast<double>(rng.uniform_index(static_cast<std::uint64_t>(range)))});
  }
  return pts;
}

inline Point rotate(const Point& p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p[0] - s * p[1], s * p[0] + c * p[1]};
}

inline double angle_deg(double deg) { return deg * std::numbers::pi / 180.0; }

inline UnitVector dir_deg(double deg) {
  return UnitVector::from({std::cos(angle_deg(deg)), std::sin(angle_deg(deg))});
}

inline UnitVector dir(std::initializer_list<double> v) { return UnitVector::from(Point(v)); }

}  // namespace monoculus::testing
