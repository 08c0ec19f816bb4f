#include <gtest/gtest.h>

#include <random>

#include "flagtrop/hull.hpp"

using namespace flagtrop;

namespace {

Point P(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

std::vector<Point> cube(std::size_t d) {
  std::vector<Point> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Point p;
    for (std::size_t j = 0; j < d; ++j) p.emplace_back(long(mask >> j & 1U));
    out.push_back(p);
  }
  return out;
}

// Shoelace formula for a convex polygon given by its vertices in the plane;
// returns twice the area, i.e. the normalized volume.
Rational twice_area_convex(std::vector<Point> v) {
  Point c(2, Rational(0));
  for (const auto& p : v) {
    c[0] += p[0];
    c[1] += p[1];
  }
  // sort by quadrant then cross product around the centroid (all comparisons exact)
  auto half = [&](const Point& p) {
    const Rational x = p[0] * long(v.size()) - c[0], y = p[1] * long(v.size()) - c[1];
    return y < 0 || (y == 0 && x < 0);
  };
  auto cross = [&](const Point& a, const Point& b) -> Rational {
    const long k = long(v.size());
    return (a[0] * k - c[0]) * (b[1] * k - c[1]) - (a[1] * k - c[1]) * (b[0] * k - c[0]);
  };
  std::sort(v.begin(), v.end(), [&](const Point& a, const Point& b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return cross(a, b) > 0;
  });
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return abs(s);
}

}  // namespace

TEST(Chart, DimensionOfAffineSpan) {
  EXPECT_EQ(affine_dim({P({1, 0, 0}), P({0, 1, 0}), P({0, 0, 1})}), 2u);
  EXPECT_EQ(affine_dim({P({1, 1}), P({1, 1})}), 0u);
  EXPECT_EQ(affine_dim(cube(3)), 3u);
}

TEST(Facets, CubeAndSimplex) {
  EXPECT_EQ(hull_facets(cube(3)).facets.size(), 6u);
  EXPECT_EQ(hull_facets(cube(4)).facets.size(), 8u);
  const auto s = hull_facets({P({1, 0, 0}), P({0, 1, 0}), P({0, 0, 1})});
  EXPECT_EQ(s.facets.size(), 3u);
  for (const auto& f : s.facets) EXPECT_EQ(f.points.size(), 2u);
}

TEST(Facets, InteriorPointsAreNotVertices) {
  auto pts = cube(2);
  pts.push_back(P({1, 1}));  // repeated corner
  pts.push_back(P({0, 1}));
  Point mid{Rational(1, 2), Rational(1, 2)};
  pts.push_back(mid);
  EXPECT_EQ(hull_vertices(pts).size(), 4u);
}

TEST(Volume, CubesAndSimplices) {
  EXPECT_EQ(normalized_volume(cube(2)), 2);
  EXPECT_EQ(normalized_volume(cube(3)), 6);
  EXPECT_EQ(normalized_volume(cube(4)), 24);
  EXPECT_EQ(normalized_volume({P({1, 0, 0}), P({0, 1, 0}), P({0, 0, 1})}), 1);
  EXPECT_EQ(normalized_volume({P({0, 0}), P({2, 0}), P({0, 3})}), 6);
  EXPECT_EQ(normalized_volume({P({0, 0}), P({1, 1})}), 1);
}

TEST(Volume, AgreesWithShoelaceOnRandomPolygons) {
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 7; ++i) pts.push_back(P({d(rng), d(rng)}));
    if (affine_dim(pts) != 2) continue;
    std::vector<Point> verts;
    for (auto i : hull_vertices(pts)) verts.push_back(pts[i]);
    EXPECT_EQ(normalized_volume(pts), twice_area_convex(verts));
  }
}

TEST(LowerHull, SquareWithOneRaisedCorner) {
  const auto sq = cube(2);
  // heights 0,0,0,1 on (0,0),(1,0),(0,1),(1,1)
  const auto cells = lower_hull(sq, {Rational(0), Rational(0), Rational(0), Rational(1)});
  ASSERT_EQ(cells.size(), 2u);
  for (const auto& c : cells) {
    EXPECT_EQ(c.points.size(), 3u);
    // v certifies the cell: <p, v> + h(p) is minimal exactly on it
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < sq.size(); ++i) vals.push_back(dot(sq[i], c.v) + Rational(i == 3 ? 1 : 0));
    const Rational m = *std::min_element(vals.begin(), vals.end());
    for (std::size_t i = 0; i < sq.size(); ++i)
      EXPECT_EQ(vals[i] == m, std::find(c.points.begin(), c.points.end(), i) != c.points.end());
  }
}

TEST(LowerHull, AffineHeightsGiveTrivialSubdivision) {
  const auto pts = cube(3);
  Vec<Rational> h;
  for (const auto& p : pts) h.push_back(p[0] * 2 - p[2] + 5);
  const auto cells = lower_hull(pts, h);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].points.size(), 8u);
  EXPECT_EQ(cells[0].v, (Vec<Rational>{-2, 0, 1}));
}

TEST(LowerHull, RandomHeightsCoverTheVolume) {
  std::mt19937 rng(59);
  std::uniform_int_distribution<int> d(0, 5);
  const auto pts = cube(3);
  const auto chart = affine_chart(pts);
  for (int trial = 0; trial < 20; ++trial) {
    Vec<Rational> h;
    for (std::size_t i = 0; i < pts.size(); ++i) h.emplace_back(d(rng));
    Rational total = 0;
    for (const auto& c : lower_hull(pts, h)) {
      std::vector<Point> cell;
      for (auto i : c.points) cell.push_back(pts[i]);
      total += normalized_volume(cell, chart);
    }
    EXPECT_EQ(total, 6);
  }
}
