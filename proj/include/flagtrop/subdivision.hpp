#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "flagtrop/flag_matroid.hpp"
#include "flagtrop/hull.hpp"

namespace flagtrop {

// One summand of a Minkowski configuration: the points e_B for the bases B
// of `labels` together with a weight per basis (indexed like labels.bases()).
struct WeightedBlock {
  Matroid labels;
  Vec<Rational> weights;

  Rational weight(Subset b) const {
    const auto& bs = labels.bases();
    auto it = std::lower_bound(bs.begin(), bs.end(), b, graded_lex_less);
    if (it == bs.end() || *it != b) throw std::invalid_argument("weight: " + to_label(b) + " is not a label of the block");
    return weights[static_cast<std::size_t>(it - bs.begin())];
  }
};

struct WeightedConfig {
  int n = 0;
  std::vector<WeightedBlock> blocks;

  static WeightedConfig from_flag(const FlagMatroid& fm, const std::function<Rational(Subset)>& w) {
    WeightedConfig wc{fm.n(), {}};
    for (const auto& m : fm.constituents()) {
      Vec<Rational> ws;
      for (Subset b : m.bases()) ws.push_back(w(b));
      wc.blocks.push_back({m, std::move(ws)});
    }
    return wc;
  }
  static WeightedConfig from_flag(const FlagMatroid& fm, const std::map<Subset, Rational>& w) {
    return from_flag(fm, [&](Subset b) {
      auto it = w.find(b);
      return it == w.end() ? Rational(0) : it->second;
    });
  }
  static WeightedConfig zero(const FlagMatroid& fm) {
    return from_flag(fm, [](Subset) { return Rational(0); });
  }

  FlagMatroid support() const {
    std::vector<Matroid> cs;
    for (const auto& b : blocks) cs.push_back(b.labels);
    return FlagMatroid(std::move(cs));
  }
  std::vector<Vec<Rational>> weight_vectors() const {
    std::vector<Vec<Rational>> out;
    for (const auto& b : blocks) out.push_back(b.weights);
    return out;
  }
};

// Tuples (lambda_1, ..., lambda_s) in the product of the block labels, in
// lexicographic order of the block label lists.
inline std::vector<std::vector<Subset>> product_labels(const WeightedConfig& wc) {
  std::vector<std::vector<Subset>> out{{}};
  for (const auto& b : wc.blocks) {
    std::vector<std::vector<Subset>> next;
    for (const auto& t : out)
      for (Subset l : b.labels.bases()) {
        auto u = t;
        u.push_back(l);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

// phi(w): weight of a tuple is the sum of its blockwise weights.
inline Vec<Rational> mix_weights(const WeightedConfig& wc) {
  Vec<Rational> out;
  for (const auto& t : product_labels(wc)) {
    Rational s = 0;
    for (std::size_t k = 0; k < t.size(); ++k) s += wc.blocks[k].weight(t[k]);
    out.push_back(s);
  }
  return out;
}

// Coordinates of the product labels (sums of indicator vectors), aligned with product_labels.
inline std::vector<Point> product_points(const WeightedConfig& wc) {
  std::vector<Point> out;
  for (const auto& t : product_labels(wc)) {
    Point p(static_cast<std::size_t>(wc.n), Rational(0));
    for (Subset l : t)
      for (int k : elements(l)) p[static_cast<std::size_t>(k - 1)] += 1;
    out.push_back(std::move(p));
  }
  return out;
}

// Blockwise argmin of <e_l, v> + w_k(l).
inline FlagMatroid weighted_face(const WeightedConfig& wc, const Vec<Rational>& v) {
  return flag_face(wc.support(), v, wc.weight_vectors());
}

struct Cell {
  FlagMatroid flag;
  Vec<Rational> witness;

  std::vector<Subset> bases_union() const { return flag.bases_union(); }
};

struct Subdivision {
  int n = 0;
  std::size_t dim = 0;  // dimension of the subdivided polytope
  std::vector<Cell> cells;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

inline bool cell_order(const Cell& a, const Cell& b) {
  const auto x = a.bases_union(), y = b.bases_union();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), graded_lex_less);
}

// Blockwise intersection of two cells, or nothing if some block is empty.
inline std::optional<FlagMatroid> cell_intersection(const FlagMatroid& a, const FlagMatroid& b) {
  std::vector<Matroid> cs;
  for (std::size_t i = 0; i < a.length(); ++i) {
    std::vector<Subset> common;
    for (Subset x : a[i].bases())
      if (b[i].is_basis(x)) common.push_back(x);
    if (common.empty()) return std::nullopt;
    cs.emplace_back(a.n(), std::move(common));
  }
  return FlagMatroid(std::move(cs));
}

inline std::vector<std::pair<std::size_t, std::size_t>> facet_adjacency(const std::vector<Cell>& cells, std::size_t dim) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (dim == 0) return edges;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      const auto common = cell_intersection(cells[i].flag, cells[j].flag);
      if (common && polytope_dim(*common) == dim - 1) edges.emplace_back(i, j);
    }
  return edges;
}

// Maximal cells of the coherent mixed subdivision. Each maximal cell is the
// weighted face at a functional v that is constant (after adding weights) on
// the labels of each block of the cell; because the cell is full-dimensional
// those tie equations determine v up to the orthogonal complement of the
// polytope's span. We therefore solve every independent system of `dim` tie
// equations <e_a - e_b, v> = w_b - w_a (a, b labels of one block) and keep the
// full-dimensional faces that result.
inline Subdivision regular_subdivision(const WeightedConfig& wc) {
  const FlagMatroid ambient = wc.support();
  Subdivision s{wc.n, polytope_dim(ambient), {}, {}};
  const auto nn = static_cast<std::size_t>(wc.n);
  struct Tie {
    Vec<Rational> row;
    Rational rhs;
  };
  std::vector<Tie> ties;
  for (const auto& b : wc.blocks) {
    const auto& ls = b.labels.bases();
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j) {
        Vec<Rational> row(nn, Rational(0));
        for (int k : elements(ls[i])) row[static_cast<std::size_t>(k - 1)] += 1;
        for (int k : elements(ls[j])) row[static_cast<std::size_t>(k - 1)] -= 1;
        ties.push_back({std::move(row), b.weights[j] - b.weights[i]});
      }
  }
  std::set<FlagKey> seen;
  auto consider = [&](const Vec<Rational>& v) {
    FlagMatroid cell = weighted_face(wc, v);
    if (polytope_dim(cell) != s.dim) return;
    if (!seen.insert(serialize_key(cell)).second) return;
    s.cells.push_back({std::move(cell), v});
  };
  if (s.dim == 0) {
    consider(Vec<Rational>(nn, Rational(0)));
  } else {
    detail::for_each_combination(ties.size(), s.dim, [&](const std::vector<std::size_t>& idx) {
      RationalMatrix m(s.dim, nn);
      Vec<Rational> rhs;
      for (std::size_t r = 0; r < s.dim; ++r) {
        for (std::size_t c = 0; c < nn; ++c) m(r, c) = ties[idx[r]].row[c];
        rhs.push_back(ties[idx[r]].rhs);
      }
      if (rank(m) != s.dim) return;
      if (auto v = solve(m, rhs)) consider(*v);
    });
  }
  std::sort(s.cells.begin(), s.cells.end(), cell_order);
  s.edges = facet_adjacency(s.cells, s.dim);
  return s;
}

// Independent route: lower facets of the lifted product configuration by
// brute-force convex hull. Returns the point set of each maximal cell.
inline std::vector<std::set<Point>> lower_hull_cells(const WeightedConfig& wc) {
  const auto pts = product_points(wc);
  std::vector<std::set<Point>> out;
  for (const auto& f : lower_hull(pts, mix_weights(wc))) {
    std::set<Point> cell;
    for (auto i : f.points) cell.insert(pts[i]);
    out.push_back(std::move(cell));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::set<Point> cell_points(const FlagMatroid& cell) {
  const auto pts = minkowski_points(cell);
  return {pts.begin(), pts.end()};
}

// First cell failing the matroid or flag axioms, if any.
inline std::optional<std::size_t> non_matroidal_cell(const Subdivision& s) {
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    const auto& f = s.cells[i].flag;
    for (const auto& m : f.constituents())
      if (!validate_matroid(m.n(), m.bases())) return i;
    if (!validate_flag(f)) return i;
  }
  return std::nullopt;
}
inline bool is_matroidal(const Subdivision& s) { return !non_matroidal_cell(s); }

inline bool flag_dressian_member(const FlagMatroid& fm, const std::map<Subset, Rational>& w) {
  return is_matroidal(regular_subdivision(WeightedConfig::from_flag(fm, w)));
}

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool connected() const {
    if (vertices == 0) return true;
    std::vector<std::vector<std::size_t>> adj(vertices);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<bool> seen(vertices, false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      const auto x = q.front();
      q.pop();
      for (auto y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          ++count;
          q.push(y);
        }
    }
    return count == vertices;
  }
  bool is_tree() const { return connected() && edges.size() + 1 == vertices; }
};

inline Graph adjacency_graph(const Subdivision& s) { return {s.cells.size(), s.edges}; }

// Functionals realizing every face of a polytope whose normal fan is refined
// by the braid arrangement: all v in {0, ..., n-1}^n.
inline std::vector<Vec<Rational>> braid_functionals(int n) {
  std::vector<Vec<Rational>> out;
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  while (true) {
    Vec<Rational> v;
    for (int d : digits) v.emplace_back(d);
    out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == n) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

inline std::vector<FlagMatroid> faces_of(const FlagMatroid& cell) {
  std::set<FlagKey> seen;
  std::vector<FlagMatroid> out;
  for (const auto& v : braid_functionals(cell.n())) {
    auto f = flag_face(cell, v);
    if (seen.insert(serialize_key(f)).second) out.push_back(std::move(f));
  }
  return out;
}

inline bool is_face_of(const FlagMatroid& r, const FlagMatroid& cell) {
  for (const auto& f : faces_of(cell))
    if (f == r) return true;
  return false;
}

// Maximal cells having r as a face, with the adjacency edges among them.
// Vertex i of the result is cell `cells[i]` of the returned index list.
struct SubgraphAbove {
  std::vector<std::size_t> cells;
  Graph graph;
};

inline SubgraphAbove subgraph_above(const Subdivision& s, const FlagMatroid& r) {
  SubgraphAbove out;
  std::map<std::size_t, std::size_t> index;
  for (std::size_t i = 0; i < s.cells.size(); ++i)
    if (is_face_of(r, s.cells[i].flag)) {
      index[i] = out.cells.size();
      out.cells.push_back(i);
    }
  out.graph.vertices = out.cells.size();
  for (auto [a, b] : s.edges)
    if (index.count(a) && index.count(b)) out.graph.edges.emplace_back(index[a], index[b]);
  return out;
}

// All faces of all maximal cells (deduplicated).
inline std::vector<FlagMatroid> all_faces(const Subdivision& s) {
  std::set<FlagKey> seen;
  std::vector<FlagMatroid> out;
  for (const auto& c : s.cells)
    for (auto& f : faces_of(c.flag))
      if (seen.insert(serialize_key(f)).second) out.push_back(std::move(f));
  return out;
}

// Sum of the normalized volumes of the maximal cells and of the whole polytope.
struct VolumeCover {
  Rational cells;
  Rational total;
};

inline VolumeCover volume_cover(const WeightedConfig& wc, const Subdivision& s) {
  const auto pts = minkowski_points(wc.support());
  const auto chart = affine_chart(pts);
  VolumeCover out{0, normalized_volume(pts, chart)};
  for (const auto& c : s.cells) out.cells += normalized_volume(minkowski_points(c.flag), chart);
  return out;
}

}  // namespace flagtrop
