#include "monoculus/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace monoculus {

Point::Point(std::size_t dim) : dim_(dim) {
  if (dim > kMaxDim) {
    throw UnsupportedDimension("dimension " + std::to_string(dim) + " exceeds kMaxDim");
  }
}

Point::Point(std::initializer_list<double> coords) : Point(coords.size()) {
  std::copy(coords.begin(), coords.end(), v_.begin());
}

Point Point::from_coords(std::span<const double> coords) {
  Point p(coords.size());
  std::copy(coords.begin(), coords.end(), p.v_.begin());
  return p;
}

Point& Point::operator+=(const Point& o) {
  for (std::size_t k = 0; k < dim_; ++k) v_[k] += o.v_[k];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  for (std::size_t k = 0; k < dim_; ++k) v_[k] -= o.v_[k];
  return *this;
}

Point& Point::operator*=(double s) {
  for (std::size_t k = 0; k < dim_; ++k) v_[k] *= s;
  return *this;
}

bool operator==(const Point& a, const Point& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t k = 0; k < a.dim_; ++k) {
    if (a.v_[k] != b.v_[k]) return false;
  }
  return true;
}

bool Point::is_finite() const {
  for (std::size_t k = 0; k < dim_; ++k) {
    if (!std::isfinite(v_[k])) return false;
  }
  return true;
}

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) s += a[k] * b[k];
  return s;
}

double norm(const Point& v) {
  if (v.dim() == 2) return std::hypot(v[0], v[1]);
  return std::sqrt(dot(v, v));
}

double euclidean_distance(const Point& a, const Point& b) { return norm(a - b); }

UnitVector UnitVector::from(const Point& v) {
  const double len = norm(v);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw std::invalid_argument("cannot normalise a zero or non-finite vector");
  }
  return UnitVector(v * (1.0 / len));
}

UnitVector UnitVector::axis(std::size_t dim, std::size_t k, int sign) {
  Point p(dim);
  p[k] = sign < 0 ? -1.0 : 1.0;
  return UnitVector(p);
}

bool lex_less(const UnitVector& a, const UnitVector& b) {
  const auto ca = a.coords();
  const auto cb = b.coords();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double distance_to_segment(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return euclidean_distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return euclidean_distance(p, a + ab * t);
}

}  // namespace

ConvexHull2D convex_hull(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull of an empty point set");
  for (const auto& p : points) {
    if (p.dim() != 2) {
      throw UnsupportedDimension("convex_hull supports dimension 2 only, got " +
                                 std::to_string(p.dim()));
    }
  }

  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return ConvexHull2D({pts.front()});

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= kCollinearTol) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= kCollinearTol) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  // All-collinear input leaves the two extremes; the chain may emit the far end twice.
  if (hull.size() == 2 && hull[0] == hull[1]) hull.pop_back();
  return ConvexHull2D(std::move(hull));
}

double hull_perimeter(const ConvexHull2D& hull) {
  const auto& v = hull.vertices();
  if (v.size() < 2) return 0.0;
  if (v.size() == 2) return 2.0 * euclidean_distance(v[0], v[1]);
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    total += euclidean_distance(v[i], v[(i + 1) % v.size()]);
  }
  return total;
}

double hull_area(const ConvexHull2D& hull) {
  const auto& v = hull.vertices();
  if (v.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  return std::abs(twice) / 2.0;
}

double distance_to_hull(const ConvexHull2D& hull, const Point& p) {
  const auto& v = hull.vertices();
  if (v.empty()) return std::numeric_limits<double>::infinity();
  if (v.size() == 1) return euclidean_distance(p, v[0]);
  if (v.size() == 2) return distance_to_segment(p, v[0], v[1]);

  bool inside = true;
  for (std::size_t i = 0; i < v.size() && inside; ++i) {
    inside = cross(v[i], v[(i + 1) % v.size()], p) >= 0.0;
  }
  if (inside) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, distance_to_segment(p, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

bool hull_contains(const ConvexHull2D& outer, const ConvexHull2D& inner, double tol) {
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](const Point& p) { return distance_to_hull(outer, p) <= tol; });
}

BoundingBox bounding_box(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("bounding_box of an empty point set");
  BoundingBox box{points.front(), points.front()};
  for (const auto& p : points.subspan(1)) {
    for (std::size_t k = 0; k < p.dim(); ++k) {
      box.min[k] = std::min(box.min[k], p[k]);
      box.max[k] = std::max(box.max[k], p[k]);
    }
  }
  return box;
}

Point centroid(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("centroid of an empty point set");
  Point sum(points.front().dim());
  for (const auto& p : points) sum += p;
  return sum * (1.0 / static_cast<double>(points.size()));
}

double max_pairwise_distance(std::span<const Point> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, euclidean_distance(points[i], points[j]));
    }
  }
  return best;
}

}  // namespace monoculus
