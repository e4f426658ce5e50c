#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monoculus {

/// Largest supported ambient dimension. Points keep their coordinates inline
/// so that per-robot sensing does not allocate.
inline constexpr std::size_t kMaxDim = 8;

/// Absolute cross-product threshold below which three points count as collinear.
inline constexpr double kCollinearTol = 1e-9;

/// Default slack for hull containment checks.
inline constexpr double kHullContainTol = 1e-9;

class UnsupportedDimension : public std::invalid_argument {
 public:
  explicit UnsupportedDimension(const std::string& what) : std::invalid_argument(what) {}
};

/// A point (or displacement) in R^d, 2 <= d <= kMaxDim for simulation data.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim);
  Point(std::initializer_list<double> coords);
  static Point from_coords(std::span<const double> coords);

  std::size_t dim() const { return dim_; }
  double operator[](std::size_t k) const { return v_[k]; }
  double& operator[](std::size_t k) { return v_[k]; }
  std::span<const double> coords() const { return {v_.data(), dim_}; }

  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  Point& operator*=(double s);

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend bool operator==(const Point& a, const Point& b);

  bool is_finite() const;

 private:
  std::array<double, kMaxDim> v_{};
  std::size_t dim_ = 0;
};

double dot(const Point& a, const Point& b);
double norm(const Point& v);
double euclidean_distance(const Point& a, const Point& b);

/// Unit-norm direction. Only constructible by normalising a nonzero vector,
/// so every instance has norm 1 within 1e-12.
class AxisFrame;

class UnitVector {
 public:
  /// Throws std::invalid_argument for a zero or non-finite vector.
  static UnitVector from(const Point& v);
  static UnitVector axis(std::size_t dim, std::size_t k, int sign);

  std::size_t dim() const { return v_.dim(); }
  double operator[](std::size_t k) const { return v_[k]; }
  const Point& vec() const { return v_; }
  std::span<const double> coords() const { return v_.coords(); }

  friend bool operator==(const UnitVector& a, const UnitVector& b) { return a.v_ == b.v_; }

 private:
  friend class AxisFrame;  // signed axis permutations preserve the norm exactly
  explicit UnitVector(Point v) : v_(v) {}
  Point v_;
};

/// Component-wise lexicographic order on directions.
bool lex_less(const UnitVector& a, const UnitVector& b);

/// Convex hull of a planar point set, counter-clockwise, collinear vertices dropped.
/// One vertex for a single (or fully collocated) input, two for a collinear one.
class ConvexHull2D {
 public:
  ConvexHull2D() = default;
  explicit ConvexHull2D(std::vector<Point> ccw_vertices) : vertices_(std::move(ccw_vertices)) {}

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool is_segment() const { return vertices_.size() == 2; }

 private:
  std::vector<Point> vertices_;
};

/// Andrew's monotone chain. Throws UnsupportedDimension unless every point is 2D,
/// std::invalid_argument on empty input.
ConvexHull2D convex_hull(std::span<const Point> points);

/// Closed-tour perimeter: a segment hull counts its length twice, a point hull is 0.
double hull_perimeter(const ConvexHull2D& hull);
double hull_area(const ConvexHull2D& hull);

/// True iff every vertex of `inner` lies inside `outer` or within `tol` of it.
bool hull_contains(const ConvexHull2D& outer, const ConvexHull2D& inner, double tol = kHullContainTol);

/// Euclidean distance from p to the (closed) hull; 0 inside.
double distance_to_hull(const ConvexHull2D& hull, const Point& p);

struct BoundingBox {
  Point min;
  Point max;

  /// Extent along axis k.
  double extent(std::size_t k) const { return max[k] - min[k]; }
};

BoundingBox bounding_box(std::span<const Point> points);
Point centroid(std::span<const Point> points);

/// Largest pairwise distance (0 for fewer than two points).
double max_pairwise_distance(std::span<const Point> points);

}  // namespace monoculus
