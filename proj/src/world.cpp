#include "monoculus/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace monoculus {

Configuration::Configuration(std::vector<Point> positions, std::uint64_t time)
    : positions_(std::move(positions)), time_(time) {
  if (positions_.size() < 2) throw InvalidConfig("a configuration needs at least two robots");
  dim_ = positions_.front().dim();
  if (dim_ < 2 || dim_ > kMaxDim) {
    throw InvalidConfig("unsupported dimension " + std::to_string(dim_));
  }
  for (const auto& p : positions_) {
    if (p.dim() != dim_) throw InvalidConfig("robots of mixed dimension");
    if (!p.is_finite()) throw InvalidConfig("non-finite robot coordinate");
  }
}

void Configuration::set_position(std::size_t robot, const Point& p) {
  if (p.dim() != dim_ || !p.is_finite()) throw InvalidConfig("invalid position update");
  positions_[robot] = p;
}

bool Configuration::all_collocated() const {
  return std::all_of(positions_.begin(), positions_.end(), [&](const Point& p) {
    return euclidean_distance(p, positions_.front()) <= kCollocatedTol;
  });
}

Configuration deploy_uniform(std::size_t n, std::size_t dim, double side, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p(dim);
    for (std::size_t k = 0; k < dim; ++k) p[k] = rng.uniform(0.0, side);
    pts.push_back(p);
  }
  return Configuration(std::move(pts));
}

namespace {

struct Candidate {
  double angle;
  double distance;
  std::size_t robot;
  Point delta;
};

// Chord length between unit vectors; equals the angle to first order.
double chord(const UnitVector& a, const UnitVector& b) { return norm(a.vec() - b.vec()); }

std::vector<VisibleRobot> visible_planar(const Configuration& config, std::size_t observer) {
  const Point& self = config.position(observer);
  std::vector<Candidate> cands;
  cands.reserve(config.size());
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (j == observer) continue;
    Point delta = config.position(j) - self;
    const double dist = norm(delta);
    if (dist <= kCollocatedTol) continue;
    cands.push_back({std::atan2(delta[1], delta[0]), dist, j, delta});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.robot < b.robot;
  });

  // Group runs of nearly equal angle; keep the nearest robot of each run.
  std::vector<const Candidate*> nearest;
  std::vector<double> group_start;
  for (const auto& c : cands) {
    if (!nearest.empty() && c.angle - group_start.back() < kRayAngleTol) {
      if (c.distance < nearest.back()->distance) nearest.back() = &c;
      continue;
    }
    nearest.push_back(&c);
    group_start.push_back(c.angle);
  }
  // The ray at angle pi may straddle the atan2 branch cut.
  if (nearest.size() >= 2 &&
      group_start.front() + 2.0 * std::numbers::pi - group_start.back() < kRayAngleTol) {
    if (nearest.back()->distance < nearest.front()->distance) nearest.front() = nearest.back();
    nearest.pop_back();
  }

  std::vector<VisibleRobot> out;
  out.reserve(nearest.size());
  for (const Candidate* c : nearest) {
    out.push_back({c->robot, UnitVector::from(c->delta * (1.0 / c->distance)), c->distance});
  }
  return out;
}

std::vector<VisibleRobot> visible_general(const Configuration& config, std::size_t observer) {
  const Point& self = config.position(observer);
  std::vector<Candidate> cands;
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (j == observer) continue;
    Point delta = config.position(j) - self;
    const double dist = norm(delta);
    if (dist <= kCollocatedTol) continue;
    cands.push_back({0.0, dist, j, delta});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.robot < b.robot;
  });
  std::vector<VisibleRobot> out;
  for (const auto& c : cands) {
    UnitVector dir = UnitVector::from(c.delta * (1.0 / c.distance));
    const bool hidden = std::any_of(out.begin(), out.end(), [&](const VisibleRobot& v) {
      return chord(v.direction, dir) < kRayAngleTol;
    });
    if (!hidden) out.push_back({c.robot, dir, c.distance});
  }
  return out;
}

}  // namespace

std::vector<VisibleRobot> visible_set(const Configuration& config, std::size_t observer) {
  auto out = config.dim() == 2 ? visible_planar(config, observer) : visible_general(config, observer);
  std::sort(out.begin(), out.end(), [](const VisibleRobot& a, const VisibleRobot& b) {
    return lex_less(a.direction, b.direction);
  });
  return out;
}

LdObservation sense_ld(const Configuration& config, std::size_t observer, double c) {
  LdObservation obs;
  for (const auto& v : visible_set(config, observer)) {
    obs.sightings.push_back({v.direction, v.distance > c});
  }
  return obs;
}

DirectionObservation sense_directions(const Configuration& config, std::size_t observer) {
  DirectionObservation obs;
  for (const auto& v : visible_set(config, observer)) obs.directions.push_back(v.direction);
  return obs;
}

AxisFrame AxisFrame::identity(std::size_t dim) {
  if (dim < 1 || dim > kMaxDim) throw UnsupportedDimension("frame dimension out of range");
  AxisFrame f;
  f.dim_ = dim;
  for (std::size_t k = 0; k < dim; ++k) {
    f.perm_[k] = static_cast<std::uint8_t>(k);
    f.sign_[k] = 1;
  }
  return f;
}

AxisFrame AxisFrame::swap_axes() {
  AxisFrame f = identity(2);
  f.perm_[0] = 1;
  f.perm_[1] = 0;
  return f;
}

std::vector<AxisFrame> AxisFrame::all(std::size_t dim) {
  AxisFrame base = identity(dim);
  std::vector<AxisFrame> frames;
  std::array<std::uint8_t, kMaxDim> perm{};
  std::iota(perm.begin(), perm.begin() + dim, std::uint8_t{0});
  do {
    for (std::uint32_t signs = 0; signs < (1U << dim); ++signs) {
      AxisFrame f = base;
      for (std::size_t k = 0; k < dim; ++k) {
        f.perm_[k] = perm[k];
        f.sign_[k] = (signs >> k) & 1U ? -1 : 1;
      }
      frames.push_back(f);
    }
  } while (std::next_permutation(perm.begin(), perm.begin() + dim));
  return frames;
}

AxisFrame AxisFrame::random(std::size_t dim, Rng& rng) {
  AxisFrame f = identity(dim);
  for (std::size_t k = dim; k-- > 1;) {
    std::swap(f.perm_[k], f.perm_[rng.uniform_index(k + 1)]);
  }
  for (std::size_t k = 0; k < dim; ++k) f.sign_[k] = rng.bernoulli(0.5) ? -1 : 1;
  return f;
}

Point AxisFrame::to_local(const Point& world) const {
  Point local(dim_);
  for (std::size_t k = 0; k < dim_; ++k) local[k] = sign_[k] * world[perm_[k]];
  return local;
}

Point AxisFrame::to_world(const Point& local) const {
  Point world(dim_);
  for (std::size_t k = 0; k < dim_; ++k) world[perm_[k]] = sign_[k] * local[k];
  return world;
}

UnitVector AxisFrame::to_local(const UnitVector& world) const {
  return UnitVector(to_local(world.vec()));
}

UnitVector AxisFrame::to_world(const UnitVector& local) const {
  return UnitVector(to_world(local.vec()));
}

std::string AxisFrame::label() const {
  static constexpr char kNames[] = "xyzwuvst";
  std::string s;
  for (std::size_t k = 0; k < dim_; ++k) {
    s += sign_[k] < 0 ? '-' : '+';
    s += kNames[perm_[k]];
  }
  return s;
}

OlaObservation sense_ola(const Configuration& config, std::size_t observer, const AxisFrame& frame) {
  OlaObservation obs;
  for (const auto& v : visible_set(config, observer)) {
    obs.directions.push_back(frame.to_local(v.direction));
  }
  std::sort(obs.directions.begin(), obs.directions.end(), lex_less);
  return obs;
}

int OlaClassification::inward(std::size_t k) const {
  switch (sides[k]) {
    case SideOccupancy::LowEmpty: return +1;
    case SideOccupancy::HighEmpty: return -1;
    default: return 0;
  }
}

std::vector<std::size_t> OlaClassification::boundary_axes() const {
  std::vector<std::size_t> axes;
  for (std::size_t k = 0; k < dim; ++k) {
    if (inward(k) != 0) axes.push_back(k);
  }
  return axes;
}

std::string to_string(OlaClass kind) {
  switch (kind) {
    case OlaClass::Inner: return "inner";
    case OlaClass::Boundary: return "boundary";
    case OlaClass::Corner: return "corner";
    case OlaClass::LineEnd: return "line-end";
    case OlaClass::LineDegenerate: return "line-degenerate";
  }
  return "?";
}

namespace {

SideOccupancy occupancy(bool low, bool high) {
  if (low && high) return SideOccupancy::Both;
  if (high) return SideOccupancy::LowEmpty;
  if (low) return SideOccupancy::HighEmpty;
  return SideOccupancy::BothEmpty;
}

}  // namespace

OlaClassification classify_ola(const OlaObservation& obs) {
  if (obs.directions.empty()) {
    throw InvalidConfig("empty observation: a robot always sees another unless all are collocated");
  }
  OlaClassification cls;
  cls.dim = obs.directions.front().dim();
  std::size_t one_sided = 0;
  bool degenerate = false;
  for (std::size_t k = 0; k < cls.dim; ++k) {
    bool low = false;
    bool high = false;
    for (const auto& u : obs.directions) {
      low = low || u[k] < -kAxisTol;
      high = high || u[k] > kAxisTol;
    }
    cls.sides[k] = occupancy(low, high);
    if (cls.sides[k] == SideOccupancy::BothEmpty) degenerate = true;
    if (cls.sides[k] == SideOccupancy::LowEmpty || cls.sides[k] == SideOccupancy::HighEmpty) ++one_sided;
  }

  if (obs.directions.size() == 1) {
    cls.kind = OlaClass::LineEnd;
  } else if (degenerate) {
    cls.kind = OlaClass::LineDegenerate;
  } else if (one_sided >= 2) {
    cls.kind = OlaClass::Corner;
  } else if (one_sided == 1) {
    cls.kind = OlaClass::Boundary;
  } else {
    cls.kind = OlaClass::Inner;
  }
  return cls;
}

std::array<SideOccupancy, kMaxDim> side_occupancy(const Configuration& config, std::size_t observer,
                                                  const AxisFrame& frame) {
  const std::size_t d = config.dim();
  std::array<bool, kMaxDim> low{};
  std::array<bool, kMaxDim> high{};
  const Point& self = config.position(observer);
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (j == observer) continue;
    const Point delta = config.position(j) - self;
    const double dist = norm(delta);
    if (dist <= kCollocatedTol) continue;
    for (std::size_t k = 0; k < d; ++k) {
      const double comp = frame.sign(k) * delta[frame.axis(k)] / dist;
      low[k] = low[k] || comp < -kAxisTol;
      high[k] = high[k] || comp > kAxisTol;
    }
  }
  std::array<SideOccupancy, kMaxDim> sides{};
  for (std::size_t k = 0; k < d; ++k) sides[k] = occupancy(low[k], high[k]);
  return sides;
}

}  // namespace monoculus
