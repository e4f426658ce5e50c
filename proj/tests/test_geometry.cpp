#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "monoculus/geometry.hpp"
#include "support.hpp"

namespace monoculus {
namespace {

using testing::random_points;

std::vector<Point> pts(std::initializer_list<std::pair<double, double>> xy) {
  std::vector<Point> out;
  for (auto [x, y] : xy) out.push_back({x, y});
  return out;
}

ConvexHull2D hull_of(const std::vector<Point>& p) { return convex_hull(p); }

TEST(Point, ArithmeticAndNorm) {
  const Point a{3.0, 4.0};
  EXPECT_DOUBLE_EQ(norm(a), 5.0);
  EXPECT_EQ((a + Point{1.0, 1.0}), (Point{4.0, 5.0}));
  EXPECT_EQ(2.0 * a, (Point{6.0, 8.0}));
  EXPECT_DOUBLE_EQ((euclidean_distance(Point{0, 0, 0}, Point{1, 2, 2})), 3.0);
}

TEST(UnitVector, NormalisesAndRejectsZero) {
  const UnitVector u = UnitVector::from({3.0, 4.0});
  EXPECT_NEAR(norm(u.vec()), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(u[0], 0.6);
  EXPECT_THROW((UnitVector::from({0.0, 0.0})), std::invalid_argument);
  EXPECT_THROW((UnitVector::from({NAN, 1.0})), std::invalid_argument);
  EXPECT_EQ(UnitVector::axis(3, 1, -1), (UnitVector::from({0.0, -1.0, 0.0})));
}

TEST(UnitVector, LexOrder) {
  EXPECT_TRUE((lex_less(UnitVector::from({-1, 0}), UnitVector::from({0, 1}))));
  EXPECT_TRUE((lex_less(UnitVector::from({0, -1}), UnitVector::from({0, 1}))));
  EXPECT_FALSE((lex_less(UnitVector::from({0, 1}), UnitVector::from({0, 1}))));
}

TEST(ConvexHull, InteriorPointDropped) {
  const auto h = hull_of(pts({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}}));
  ASSERT_EQ(h.size(), 3u);
  std::set<std::pair<double, double>> got;
  for (const auto& v : h.vertices()) got.insert({v[0], v[1]});
  EXPECT_EQ(got, (std::set<std::pair<double, double>>{{0, 0}, {1, 0}, {0, 1}}));
}

TEST(ConvexHull, CollinearGivesSegment) {
  const auto h = hull_of(pts({{0, 0}, {1, 1}, {2, 2}}));
  ASSERT_TRUE(h.is_segment());
  EXPECT_EQ(h.vertices()[0], (Point{0, 0}));
  EXPECT_EQ(h.vertices()[1], (Point{2, 2}));
  EXPECT_DOUBLE_EQ(hull_area(h), 0.0);
}

TEST(ConvexHull, DuplicatesCollapse) {
  const auto h = hull_of(pts({{1, 1}, {1, 1}, {1, 1}}));
  EXPECT_EQ(h.size(), 1u);
  EXPECT_DOUBLE_EQ(hull_perimeter(h), 0.0);
  EXPECT_DOUBLE_EQ(hull_area(h), 0.0);
}

TEST(ConvexHull, RejectsOtherDimensionsAndEmptyInput) {
  const std::vector<Point> p3{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  EXPECT_THROW(convex_hull(p3), UnsupportedDimension);
  EXPECT_THROW(convex_hull(std::vector<Point>{}), std::invalid_argument);
}

// A pair (i, j) is a hull edge iff every other point is on its left or on the
// segment; the hull vertices are the endpoints of such edges.
std::set<std::pair<double, double>> extreme_point_oracle(const std::vector<Point>& p) {
  std::set<std::pair<double, double>> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      bool edge = true;
      for (std::size_t k = 0; k < p.size() && edge; ++k) {
        if (k == i || k == j) continue;
        const double cr = (p[j][0] - p[i][0]) * (p[k][1] - p[i][1]) - (p[j][1] - p[i][1]) * (p[k][0] - p[i][0]);
        if (cr < 0) edge = false;
      }
      if (edge) {
        out.insert({p[i][0], p[i][1]});
        out.insert({p[j][0], p[j][1]});
      }
    }
  }
  return out;
}

TEST(ConvexHull, MatchesExtremePointOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto p = random_points(rng, 100);
    const auto h = convex_hull(p);
    std::set<std::pair<double, double>> got;
    for (const auto& v : h.vertices()) got.insert({v[0], v[1]});
    EXPECT_EQ(got, extreme_point_oracle(p)) << "seed " << seed;
  }
}

TEST(ConvexHull, OutputIsCounterClockwiseAndConvex) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto h = convex_hull(random_points(rng, 3 + seed));
    const auto& v = h.vertices();
    if (v.size() < 3) continue;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point& a = v[i];
      const Point& b = v[(i + 1) % v.size()];
      const Point& c = v[(i + 2) % v.size()];
      const double cr = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
      EXPECT_GT(cr, kCollinearTol);
    }
  }
}

TEST(HullMeasures, UnitSquareAndSegment) {
  const auto sq = hull_of(pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  EXPECT_DOUBLE_EQ(hull_perimeter(sq), 4.0);
  EXPECT_DOUBLE_EQ(hull_area(sq), 1.0);
  const auto seg = hull_of(pts({{0, 0}, {3, 0}}));
  EXPECT_DOUBLE_EQ(hull_perimeter(seg), 6.0);
  EXPECT_DOUBLE_EQ(hull_area(seg), 0.0);
}

TEST(HullMeasures, MatchShoelaceOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const auto h = convex_hull(random_points(rng, 40, 2, -5, 5));
    const auto& v = h.vertices();
    // Triangle fan from the first vertex, independent of the library's formula.
    double area = 0.0, perim = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      const Point a = v[i] - v[0], b = v[i + 1] - v[0];
      area += 0.5 * std::abs(a[0] * b[1] - a[1] * b[0]);
    }
    for (std::size_t i = 0; i < v.size(); ++i) perim += std::hypot(v[(i + 1) % v.size()][0] - v[i][0],
                                                                   v[(i + 1) % v.size()][1] - v[i][1]);
    EXPECT_NEAR(hull_area(h), area, 1e-9);
    EXPECT_NEAR(hull_perimeter(h), perim, 1e-9);
  }
}

TEST(HullMeasures, InvariantUnderRigidMotion) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const auto p = random_points(rng, 30, 2, -10, 10);
    const double angle = rng.uniform(0, 2 * std::numbers::pi);
    const Point shift{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    std::vector<Point> q;
    for (const auto& x : p) q.push_back(testing::rotate(x, angle) + shift);
    const auto h1 = convex_hull(p), h2 = convex_hull(q);
    EXPECT_NEAR(hull_area(h2), hull_area(h1), 1e-9 * hull_area(h1));
    EXPECT_NEAR(hull_perimeter(h2), hull_perimeter(h1), 1e-9 * hull_perimeter(h1));
  }
}

TEST(HullMeasures, NestedSetsHaveSmallerPerimeter) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    auto t = random_points(rng, 2 + rng.uniform_index(30));
    std::vector<Point> s;
    for (const auto& x : t) {
      if (rng.bernoulli(0.5)) s.push_back(x);
    }
    if (s.empty()) s.push_back(t.front());
    EXPECT_LE(hull_perimeter(convex_hull(s)), hull_perimeter(convex_hull(t)) + 1e-9);
  }
}

TEST(HullContains, ReflexiveAndShifted) {
  const auto sq = pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_TRUE(hull_contains(hull_of(sq), hull_of(sq), 0.0));
  const auto shifted = pts({{2, 0}, {3, 0}, {3, 1}, {2, 1}});
  EXPECT_FALSE(hull_contains(hull_of(sq), hull_of(shifted)));
}

TEST(HullContains, ReflexiveAndTransitiveOnLattice) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto a = convex_hull(testing::lattice_points(rng, 3 + rng.uniform_index(10), 20));
    const auto b = convex_hull(testing::lattice_points(rng, 3 + rng.uniform_index(10), 20));
    const auto c = convex_hull(testing::lattice_points(rng, 3 + rng.uniform_index(10), 20));
    EXPECT_TRUE(hull_contains(a, a, 0.0));
    if (hull_contains(a, b, 0.0) && hull_contains(b, c, 0.0)) {
      EXPECT_TRUE(hull_contains(a, c, 0.0));
    }
  }
}

TEST(HullContains, SubsetHullIsContained) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    auto t = random_points(rng, 20);
    std::vector<Point> s(t.begin(), t.begin() + 7);
    EXPECT_TRUE(hull_contains(convex_hull(t), convex_hull(s)));
  }
}

TEST(HullContains, ToleranceBand) {
  const auto sq = hull_of(pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  const auto out = hull_of(pts({{0.5, 0.5}, {1.0 + 1e-10, 0.5}}));
  EXPECT_TRUE(hull_contains(sq, out, 1e-9));
  EXPECT_FALSE(hull_contains(sq, out, 0.0));
}

TEST(DistanceToHull, InsideOutsideAndDegenerate) {
  const auto sq = hull_of(pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  EXPECT_DOUBLE_EQ((distance_to_hull(sq, {0.5, 0.5})), 0.0);
  EXPECT_DOUBLE_EQ((distance_to_hull(sq, {2.0, 0.5})), 1.0);
  EXPECT_NEAR((distance_to_hull(sq, {2.0, 2.0})), std::sqrt(2.0), 1e-15);
  const auto seg = hull_of(pts({{0, 0}, {2, 0}}));
  EXPECT_DOUBLE_EQ((distance_to_hull(seg, {1.0, 1.0})), 1.0);
  const auto dot = hull_of(pts({{0, 0}}));
  EXPECT_DOUBLE_EQ((distance_to_hull(dot, {3.0, 4.0})), 5.0);
}

TEST(BoundingBoxCentroid, Square) {
  const auto p = pts({{0, 0}, {2, 0}, {0, 2}, {2, 2}});
  EXPECT_EQ(centroid(p), (Point{1, 1}));
  const BoundingBox box = bounding_box(p);
  EXPECT_EQ(box.min, (Point{0, 0}));
  EXPECT_EQ(box.max, (Point{2, 2}));
  EXPECT_DOUBLE_EQ(box.extent(1), 2.0);
}

TEST(BoundingBoxCentroid, SinglePoint) {
  const std::vector<Point> p{{3.5, -1.0}};
  EXPECT_EQ(centroid(p), p[0]);
  EXPECT_EQ(bounding_box(p).min, p[0]);
  EXPECT_EQ(bounding_box(p).max, p[0]);
}

TEST(BoundingBoxCentroid, CentroidMatchesPairwiseSummation) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto p = random_points(rng, 50, 3, -100, 100);
    // Pairwise (tree) summation, a different order from a running sum.
    std::vector<Point> level(p.begin(), p.end());
    while (level.size() > 1) {
      std::vector<Point> next;
      for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
      if (level.size() % 2) next.push_back(level.back());
      level = std::move(next);
    }
    const Point expect = level.front() * (1.0 / 50.0);
    const Point got = centroid(p);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(got[k], expect[k], 1e-10);
  }
}

TEST(MaxPairwise, BruteForce) {
  Rng rng(5);
  const auto p = random_points(rng, 40, 3);
  double best = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) best = std::max(best, euclidean_distance(p[i], p[j]));
  }
  EXPECT_DOUBLE_EQ(max_pairwise_distance(p), best);
  EXPECT_DOUBLE_EQ((max_pairwise_distance(std::vector<Point>{{1, 1}})), 0.0);
}

}  // namespace
}  // namespace monoculus
