#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "flagtrop/linalg.hpp"

namespace flagtrop {

using Point = Vec<Rational>;

// Coordinates on the affine span of a point set: the coordinates indexed by
// the pivot columns of the reduced difference matrix restrict to an
// isomorphism from the span onto Q^dim.
struct AffineChart {
  Point origin;
  std::vector<std::size_t> coords;

  std::size_t dim() const { return coords.size(); }
  Point project(const Point& p) const {
    Point out;
    out.reserve(coords.size());
    for (auto j : coords) out.push_back(p.at(j));
    return out;
  }
};

inline AffineChart affine_chart(const std::vector<Point>& pts) {
  if (pts.empty()) throw std::invalid_argument("affine_chart: no points");
  const std::size_t n = pts.front().size();
  RationalMatrix diff(pts.size() - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) diff(i - 1, j) = pts[i][j] - pts[0][j];
  return {pts.front(), rref(diff).pivots};
}

inline std::size_t affine_dim(const std::vector<Point>& pts) { return pts.empty() ? 0 : affine_chart(pts).dim(); }

// A facet inequality normal . x >= offset in chart coordinates, scaled to a
// primitive integer normal.
struct Facet {
  Vec<Rational> normal;
  Rational offset;
  std::vector<std::size_t> points;  // indices of input points on the facet

  Rational slack(const Point& x) const { return dot(normal, x) - offset; }
};

struct HullFacets {
  AffineChart chart;
  std::vector<Facet> facets;
};

namespace detail {

template <class F>
void for_each_combination(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Facets of conv(pts) by exhaustive search over dim-subsets of the distinct
// projected points. Exponential, but exact and adequate for <= ~100 points in
// dimension <= 4.
inline HullFacets hull_facets(const std::vector<Point>& pts) {
  HullFacets out{affine_chart(pts), {}};
  const std::size_t d = out.chart.dim();
  if (d == 0) return out;
  std::vector<Point> proj;
  for (const auto& p : pts) proj.push_back(out.chart.project(p));
  std::vector<Point> distinct = proj;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  detail::for_each_combination(distinct.size(), d, [&](const std::vector<std::size_t>& idx) {
    RationalMatrix diff(d - 1, d);
    for (std::size_t r = 1; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) diff(r - 1, c) = distinct[idx[r]][c] - distinct[idx[0]][c];
    const auto ker = kernel_basis(diff);
    if (ker.size() != 1) return;
    Vec<Rational> normal = to_rational(primitive(ker[0]));
    Rational offset = dot(normal, distinct[idx[0]]);
    bool above = false, below = false;
    for (const auto& p : distinct) {
      const Rational s = dot(normal, p) - offset;
      if (s > 0) above = true;
      if (s < 0) below = true;
      if (above && below) return;
    }
    if (below) {
      for (auto& x : normal) x = -x;
      offset = -offset;
    }
    Facet f{normal, offset, {}};
    for (std::size_t i = 0; i < proj.size(); ++i)
      if (f.slack(proj[i]) == 0) f.points.push_back(i);
    for (const auto& g : out.facets)
      if (g.normal == f.normal && g.offset == f.offset) return;
    out.facets.push_back(std::move(f));
  });
  return out;
}

// Indices (into pts) of the points that are vertices of conv(pts); of
// coincident points only the first index is reported.
inline std::vector<std::size_t> hull_vertices(const std::vector<Point>& pts) {
  const auto h = hull_facets(pts);
  std::vector<std::size_t> out;
  std::set<Point> taken;
  const std::size_t d = h.chart.dim();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (taken.count(pts[i])) continue;
    bool vertex = false;
    if (d == 0) {
      vertex = true;
    } else {
      std::vector<Vec<Rational>> normals;
      for (const auto& f : h.facets)
        if (std::find(f.points.begin(), f.points.end(), i) != f.points.end()) normals.push_back(f.normal);
      vertex = !normals.empty() && rank(RationalMatrix::from_rows(normals, d)) == d;
    }
    if (vertex) {
      taken.insert(pts[i]);
      out.push_back(i);
    }
  }
  return out;
}

// Barycenter of the points (lies in the relative interior of their hull).
inline Point barycenter(const std::vector<Point>& pts) {
  Point c(pts.front().size(), Rational(0));
  for (const auto& p : pts)
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += p[j];
  for (auto& x : c) x /= static_cast<long>(pts.size());
  return c;
}

namespace detail {

// Pulling triangulation of conv(pts[subset]) as lists of indices into pts.
inline std::vector<std::vector<std::size_t>> pulling_triangulation(const std::vector<Point>& pts,
                                                                   const std::vector<std::size_t>& subset) {
  std::vector<Point> sub;
  for (auto i : subset) sub.push_back(pts[i]);
  const auto h = hull_facets(sub);
  if (h.chart.dim() == 0) return {{subset.front()}};
  const std::size_t apex = 0;
  std::vector<std::vector<std::size_t>> out;
  for (const auto& f : h.facets) {
    if (std::find(f.points.begin(), f.points.end(), apex) != f.points.end()) continue;
    std::vector<std::size_t> face;
    for (auto i : f.points) face.push_back(subset[i]);
    for (auto simplex : pulling_triangulation(pts, face)) {
      simplex.push_back(subset[apex]);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

}  // namespace detail

// Normalized volume (dim! times Euclidean volume) of conv(pts), measured in
// the coordinates of `chart`, which must contain the affine span of pts.
inline Rational normalized_volume(std::vector<Point> pts, const AffineChart& chart) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t d = chart.dim();
  if (affine_dim(pts) != d) return 0;
  std::vector<std::size_t> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  Rational vol = 0;
  for (const auto& simplex : detail::pulling_triangulation(pts, all)) {
    RationalMatrix m(d, d);
    const Point base = chart.project(pts[simplex[0]]);
    for (std::size_t r = 1; r <= d; ++r) {
      const Point p = chart.project(pts[simplex[r]]);
      for (std::size_t c = 0; c < d; ++c) m(r - 1, c) = p[c] - base[c];
    }
    vol += abs(determinant(m));
  }
  return vol;
}
inline Rational normalized_volume(const std::vector<Point>& pts) { return normalized_volume(pts, affine_chart(pts)); }

// A lower facet of a lifted configuration: the cell's points and a linear
// functional v on the ambient space such that <p, v> + height(p) is minimal
// exactly on the cell.
struct LowerFacet {
  std::vector<std::size_t> points;
  Vec<Rational> v;
};

// Lower faces of maximal dimension of the lifted points (pts[i], heights[i]),
// by brute force over the lifted hull's facets.
inline std::vector<LowerFacet> lower_hull(const std::vector<Point>& pts, const Vec<Rational>& heights) {
  const auto chart = affine_chart(pts);
  const std::size_t n = pts.front().size(), d = chart.dim();
  std::vector<Point> lifted;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point q = chart.project(pts[i]);
    q.push_back(heights[i]);
    lifted.push_back(std::move(q));
  }
  std::vector<LowerFacet> out;
  const auto lifted_chart = affine_chart(lifted);
  if (lifted_chart.dim() == d) {
    // heights are affine on the span: the trivial subdivision
    std::vector<std::size_t> all(pts.size());
    std::iota(all.begin(), all.end(), 0);
    const auto ker = kernel_basis([&] {
      RationalMatrix m(lifted.size() - 1, d + 1);
      for (std::size_t i = 1; i < lifted.size(); ++i)
        for (std::size_t j = 0; j <= d; ++j) m(i - 1, j) = lifted[i][j] - lifted[0][j];
      return m;
    }());
    Vec<Rational> v(n, Rational(0));
    for (const auto& k : ker)
      if (k[d] != 0) {
        for (std::size_t j = 0; j < d; ++j) v[chart.coords[j]] = k[j] / k[d];
        break;
      }
    out.push_back({all, v});
    return out;
  }
  // keep only the lowest point over each location
  std::map<Point, Rational> lowest;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto [it, inserted] = lowest.emplace(pts[i], heights[i]);
    if (!inserted && heights[i] < it->second) it->second = heights[i];
  }
  std::vector<Point> candidates;
  for (const auto& [p, h] : lowest) {
    Point q = chart.project(p);
    q.push_back(h);
    candidates.push_back(std::move(q));
  }
  const auto h = hull_facets(candidates);
  // the lifted candidates span d+1 dims, so their chart is all of Q^(d+1)
  for (const auto& f : h.facets) {
    const Rational& c = f.normal[d];
    if (c <= 0) continue;
    Vec<Rational> v(n, Rational(0));
    for (std::size_t j = 0; j < d; ++j) v[chart.coords[j]] = f.normal[j] / c;
    const Rational level = f.offset / c;
    LowerFacet lf{{}, v};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Rational val = heights[i];
      for (std::size_t j = 0; j < d; ++j) val += v[chart.coords[j]] * pts[i][chart.coords[j]];
      if (val == level) lf.points.push_back(i);
    }
    out.push_back(std::move(lf));
  }
  return out;
}

}  // namespace flagtrop
