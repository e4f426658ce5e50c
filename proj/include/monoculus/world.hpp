#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoculus/geometry.hpp"
#include "monoculus/rng.hpp"

namespace monoculus {

/// Robots closer than this to the observer have no defined direction and are invisible.
inline constexpr double kCollocatedTol = 1e-12;
/// Two robots share a ray when their directions differ by less than this angle (radians).
inline constexpr double kRayAngleTol = 1e-12;
/// A direction component this close to zero lies on the corresponding axis line.
inline constexpr double kAxisTol = 1e-12;

class InvalidConfig : public std::invalid_argument {
 public:
  explicit InvalidConfig(const std::string& what) : std::invalid_argument(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

class InvalidObservation : public std::invalid_argument {
 public:
  explicit InvalidObservation(const std::string& what) : std::invalid_argument(what) {}
};

/// Robot positions at one instant. Robot indices are simulator bookkeeping only.
class Configuration {
 public:
  /// Throws InvalidConfig for fewer than two robots, mixed or unsupported
  /// dimensions, or non-finite coordinates.
  explicit Configuration(std::vector<Point> positions, std::uint64_t time = 0);

  std::size_t size() const { return positions_.size(); }
  std::size_t dim() const { return dim_; }
  std::span<const Point> positions() const { return positions_; }
  const Point& position(std::size_t robot) const { return positions_[robot]; }
  void set_position(std::size_t robot, const Point& p);

  std::uint64_t time() const { return time_; }
  void set_time(std::uint64_t t) { time_ = t; }

  /// True when every robot occupies the same point.
  bool all_collocated() const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.positions_ == b.positions_;
  }

 private:
  std::vector<Point> positions_;
  std::size_t dim_ = 0;
  std::uint64_t time_ = 0;
};

/// Seeded uniform deployment in the cube [0, side]^dim.
Configuration deploy_uniform(std::size_t n, std::size_t dim, double side, std::uint64_t seed);

/// Ground-truth entry of a visibility query. Never handed to an algorithm.
struct VisibleRobot {
  std::size_t robot;
  UnitVector direction;
  double distance;
};

/// Nearest robot along each occupied ray from `observer`, ordered
/// lexicographically by direction. Collocated robots are excluded.
std::vector<VisibleRobot> visible_set(const Configuration& config, std::size_t observer);

struct LdSighting {
  UnitVector direction;
  bool is_far;  // true distance > c
};

struct LdObservation {
  std::vector<LdSighting> sightings;
};

/// Locality-detection Look step: one sighting per visible robot, is_far iff distance > c.
LdObservation sense_ld(const Configuration& config, std::size_t observer, double c);

/// Directions only (world frame). Used by the naive strategies.
struct DirectionObservation {
  std::vector<UnitVector> directions;
};

/// OLA observation: directions expressed in the robot's local axis frame.
using OlaObservation = DirectionObservation;

DirectionObservation sense_directions(const Configuration& config, std::size_t observer);

/// Signed axis permutation: local[k] = sign[k] * world[perm[k]].
class AxisFrame {
 public:
  static AxisFrame identity(std::size_t dim);
  /// All 2^d * d! frames of dimension d.
  static std::vector<AxisFrame> all(std::size_t dim);
  static AxisFrame random(std::size_t dim, Rng& rng);
  static AxisFrame swap_axes();

  std::size_t dim() const { return dim_; }
  std::size_t axis(std::size_t local_k) const { return perm_[local_k]; }
  int sign(std::size_t local_k) const { return sign_[local_k]; }

  Point to_local(const Point& world) const;
  Point to_world(const Point& local) const;
  UnitVector to_local(const UnitVector& world) const;
  UnitVector to_world(const UnitVector& local) const;

  /// Compact label, e.g. "+y-x".
  std::string label() const;

  friend bool operator==(const AxisFrame&, const AxisFrame&) = default;

 private:
  std::array<std::uint8_t, kMaxDim> perm_{};
  std::array<std::int8_t, kMaxDim> sign_{};
  std::size_t dim_ = 0;
};

OlaObservation sense_ola(const Configuration& config, std::size_t observer, const AxisFrame& frame);

/// Which half-spaces of one agreed axis hold sightings, from the robot's point of view.
enum class SideOccupancy : std::uint8_t { Both, LowEmpty, HighEmpty, BothEmpty };

enum class OlaClass { Inner, Boundary, Corner, LineEnd, LineDegenerate };

struct OlaClassification {
  OlaClass kind = OlaClass::Inner;
  std::size_t dim = 0;
  std::array<SideOccupancy, kMaxDim> sides{};

  /// +1 when robots lie only on the high side of axis k, -1 when only on the
  /// low side, 0 otherwise.
  int inward(std::size_t k) const;
  /// Axes with exactly one empty side (the boundaries the robot sits on).
  std::vector<std::size_t> boundary_axes() const;
};

std::string to_string(OlaClass kind);

/// Precedence: LineEnd, LineDegenerate, Corner, Boundary, Inner. In d > 2 a robot
/// with more than one but fewer than d one-sided axes is a Corner of that sub-orthant.
/// Throws InvalidConfig on an empty observation.
OlaClassification classify_ola(const OlaObservation& obs);

/// Per-axis occupancy computed from ground-truth positions in the robot's local
/// frame. Agrees with classify_ola(sense_ola(...)).sides without resolving occlusion,
/// since the nearest robot on any ray lies on the same side as the robots it hides.
std::array<SideOccupancy, kMaxDim> side_occupancy(const Configuration& config, std::size_t observer,
                                                  const AxisFrame& frame);

/// Persistent boundary bits of the terminating OLA variant: two per axis, in
/// the robot's local frame. Bits only ever go from 0 to 1 under the algorithm.
class RobotMemory {
 public:
  RobotMemory() = default;
  explicit RobotMemory(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  /// side: -1 low boundary, +1 high boundary.
  bool has(std::size_t axis, int side) const { return (bits_ >> bit_index(axis, side)) & 1U; }
  void set(std::size_t axis, int side) { bits_ |= 1U << bit_index(axis, side); }
  bool axis_closed(std::size_t axis) const { return has(axis, -1) && has(axis, +1); }
  bool all_set() const { return bits_ == full_mask(); }
  std::uint32_t bits() const { return bits_; }
  void assign_bits(std::uint32_t bits) { bits_ = bits & full_mask(); }
  /// Whether every bit set in `earlier` is still set here.
  bool dominates(const RobotMemory& earlier) const { return (bits_ & earlier.bits_) == earlier.bits_; }

  friend bool operator==(const RobotMemory&, const RobotMemory&) = default;

 private:
  static std::size_t bit_index(std::size_t axis, int side) { return 2 * axis + (side > 0 ? 1 : 0); }
  std::uint32_t full_mask() const { return dim_ == 0 ? 0U : (1U << (2 * dim_)) - 1U; }

  std::uint32_t bits_ = 0;
  std::size_t dim_ = 0;
};

/// CSV: header line `dim=<d>`, then one row `x_1,...,x_d` per robot.
/// Throws InvalidConfig on malformed input.
Configuration read_configuration_csv(std::istream& in);
void write_configuration_csv(std::ostream& out, const Configuration& config);
Configuration load_configuration(const std::string& path);
void save_configuration(const std::string& path, const Configuration& config);

}  // namespace monoculus
