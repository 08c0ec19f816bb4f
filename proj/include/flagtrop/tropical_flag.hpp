#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagtrop/flag_matroid.hpp"
#include "flagtrop/polynomial.hpp"
#include "flagtrop/subdivision.hpp"

namespace flagtrop {

// Pluecker coordinates of a flag variety: one block per rank, each block
// listing the r-subsets of [n] in lexicographic order.
struct CoordinateSystem {
  int n = 0;
  std::vector<int> ranks;
  std::vector<Subset> labels;

  std::size_t dim() const { return labels.size(); }
  std::size_t index(Subset s) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == s) return i;
    throw std::invalid_argument("coordinate " + to_label(s) + " is not a Pluecker coordinate here");
  }
  std::size_t block_of(std::size_t i) const {
    const int r = cardinality(labels[i]);
    return static_cast<std::size_t>(std::find(ranks.begin(), ranks.end(), r) - ranks.begin());
  }
};

inline CoordinateSystem coordinates(const std::vector<int>& ranks, int n) {
  CoordinateSystem cs{n, ranks, {}};
  for (int r : ranks)
    for (Subset s : k_subsets(n, r)) cs.labels.push_back(s);
  return cs;
}

inline CoordinateSystem complete_coordinates(int n) {
  std::vector<int> ranks;
  for (int r = 1; r < n; ++r) ranks.push_back(r);
  return coordinates(ranks, n);
}

// Sum of e_lambda over the listed subsets.
inline Vec<Integer> coordinate_vector(const CoordinateSystem& cs, const std::vector<Subset>& support) {
  Vec<Integer> v(cs.dim(), Integer(0));
  for (Subset s : support) v[cs.index(s)] += 1;
  return v;
}

inline std::map<Subset, Rational> weight_map(const CoordinateSystem& cs, const Vec<Rational>& w) {
  std::map<Subset, Rational> out;
  for (std::size_t i = 0; i < cs.dim(); ++i) out[cs.labels[i]] = w[i];
  return out;
}

// ---------------------------------------------------------------------------
// Pluecker relations

// Exponent of the sign of the term indexed by k in f_{mu,nu}.
inline int plucker_sign(int k, Subset mu, Subset nu) {
  int s = 0;
  for (int m : elements(mu))
    if (m > k) ++s;
  for (int l : elements(nu))
    if (l < k) ++s;
  return s;
}

inline Polynomial plucker_relation(Subset mu, Subset nu) {
  Polynomial f;
  for (int k : elements(nu & ~mu)) {
    const Polynomial t(Monomial(Var::p(mu | element(k))) * Monomial(Var::p(nu & ~element(k))));
    f += plucker_sign(k, mu, nu) % 2 ? -t : t;
  }
  return f;
}

// Generators f_{mu,nu} with |mu| = r_i - 1, |nu| = r_j + 1 (i <= j) and
// |nu \ mu| >= 3, sign-normalized and deduplicated up to sign.
inline std::vector<Polynomial> plucker_quadrics(const std::vector<int>& ranks, int n) {
  if (n > 5) throw std::invalid_argument("plucker_quadrics: n > 5");
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < ranks.size(); ++i)
    for (std::size_t j = i; j < ranks.size(); ++j) {
      if (ranks[i] < 1 || ranks[j] + 1 > n) continue;
      for (Subset mu : k_subsets(n, ranks[i] - 1))
        for (Subset nu : k_subsets(n, ranks[j] + 1)) {
          if (cardinality(nu & ~mu) < 3) continue;
          const Polynomial f = plucker_relation(mu, nu).sign_normalized();
          if (f.is_zero()) continue;
          if (std::none_of(out.begin(), out.end(), [&](const Polynomial& g) { return g == f; })) out.push_back(f);
        }
    }
  return out;
}

// Restriction to a flag matroid: coordinates outside its bases are set to zero.
inline Polynomial restrict_to(const Polynomial& f, const FlagMatroid& fm) {
  std::set<Var, std::less<>> zero;
  for (const auto& v : f.variables())
    if (!fm.in_bases(v.subset)) zero.insert(v);
  return f.substitute_zero(zero);
}

// ---------------------------------------------------------------------------
// Lineality

// Matrix of the torus action: row lambda, column j holds [j in lambda].
inline IntegerMatrix action_matrix(const CoordinateSystem& cs) {
  IntegerMatrix m(cs.dim(), static_cast<std::size_t>(cs.n));
  for (std::size_t i = 0; i < cs.dim(); ++i)
    for (int k : elements(cs.labels[i])) m(i, static_cast<std::size_t>(k - 1)) = 1;
  return m;
}

inline std::vector<Vec<Integer>> block_ones(const CoordinateSystem& cs) {
  std::vector<Vec<Integer>> out(cs.ranks.size(), Vec<Integer>(cs.dim(), Integer(0)));
  for (std::size_t i = 0; i < cs.dim(); ++i) out[cs.block_of(i)][i] = 1;
  return out;
}

// Saturation of the image of the torus action alone.
inline IntegerLattice torus_lattice(const CoordinateSystem& cs) { return saturate_image(action_matrix(cs)); }

// Full lineality of the fans: the torus lattice together with the per-block
// all-ones vectors, saturated.
inline IntegerLattice lineality_lattice(const CoordinateSystem& cs) {
  std::vector<Vec<Integer>> cols;
  const auto a = action_matrix(cs);
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.column(j));
  for (auto& b : block_ones(cs)) cols.push_back(std::move(b));
  return saturate_image(IntegerMatrix::from_columns(cols, cs.dim()));
}

// ---------------------------------------------------------------------------
// Symmetry on coordinates

// Image index of each coordinate: relabel by perm, then complement if dualizing.
inline std::vector<std::size_t> coordinate_permutation(const CoordinateSystem& cs, const SymmetryElement& g) {
  std::vector<std::size_t> out;
  for (Subset s : cs.labels) {
    Subset t = relabel(s, g.perm);
    if (g.dualize) t = ground_set(cs.n) & ~t;
    out.push_back(cs.index(t));
  }
  return out;
}

template <class T>
Vec<T> act(const std::vector<std::size_t>& pi, const Vec<T>& v) {
  Vec<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[pi[i]] = v[i];
  return out;
}

// ---------------------------------------------------------------------------
// Cones modulo lineality

using RayKey = std::vector<Vec<Integer>>;

struct Cone {
  std::vector<Vec<Integer>> rays;  // representatives in Z^dim, aligned with key order
  RayKey key;                      // primitive images in N / L, sorted
  std::size_t dim = 0;             // dimension modulo the lineality space
  std::size_t orbit = 0;           // index of the representative it came from
};

struct Fan {
  CoordinateSystem coords;
  IntegerLattice lineality;
  IntegerMatrix quotient;  // Z^dim -> N / L, kernel = lineality
  std::vector<Cone> cones;
  std::vector<SymmetryElement> group;

  std::size_t ambient() const { return coords.dim(); }
  std::size_t quotient_dim() const { return quotient.rows(); }
  // Dimension in the product of projective tori, i.e. modulo the block ones
  // only, counting the lineality.
  std::size_t projective_dim(const Cone& c) const { return c.dim + lineality.rank() - coords.ranks.size(); }

  std::optional<std::size_t> find(const RayKey& key) const {
    for (std::size_t i = 0; i < cones.size(); ++i)
      if (cones[i].key == key) return i;
    return std::nullopt;
  }
};

inline Vec<Integer> project(const IntegerMatrix& q, const Vec<Integer>& v) {
  Vec<Integer> out(q.rows(), Integer(0));
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) out[i] += q(i, j) * v[j];
  return out;
}

inline Vec<Integer> primitive(const Vec<Integer>& v) {
  Vec<Rational> r;
  for (const auto& x : v) r.emplace_back(x);
  return primitive(r);
}

inline Cone make_cone(const IntegerMatrix& q, std::vector<Vec<Integer>> rays, std::size_t orbit = 0) {
  std::vector<std::pair<Vec<Integer>, Vec<Integer>>> pairs;
  for (auto& r : rays) {
    auto img = primitive(project(q, r));
    if (std::all_of(img.begin(), img.end(), [](const Integer& x) { return x == 0; }))
      throw std::invalid_argument("make_cone: ray lies in the lineality space");
    pairs.emplace_back(std::move(img), std::move(r));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              pairs.end());
  Cone c;
  for (auto& [img, r] : pairs) {
    c.key.push_back(std::move(img));
    c.rays.push_back(std::move(r));
  }
  c.dim = c.key.empty() ? 0 : rank(IntegerMatrix::from_rows(c.key, q.rows()));
  c.orbit = orbit;
  return c;
}

inline Fan empty_fan(const CoordinateSystem& cs) {
  Fan f{cs, lineality_lattice(cs), {}, {}, symmetry_group(cs.n, dual_preserves_ranks(cs.ranks, cs.n))};
  f.quotient = quotient_map(f.lineality);
  return f;
}

// Adds the orbit of a cone given by ray representatives; returns the orbit size.
inline std::size_t add_orbit(Fan& fan, const std::vector<Vec<Integer>>& rays, std::size_t orbit) {
  const Cone base = make_cone(fan.quotient, rays, orbit);
  std::set<RayKey> seen;
  for (const auto& g : fan.group) {
    const auto pi = coordinate_permutation(fan.coords, g);
    std::vector<Vec<Integer>> img;
    for (const auto& r : rays) img.push_back(act(pi, r));
    Cone c = make_cone(fan.quotient, img, orbit);
    if (c.dim != base.dim || c.key.size() != base.key.size())
      throw std::logic_error("add_orbit: symmetry image has a different dimension");
    if (!seen.insert(c.key).second) continue;
    if (!fan.find(c.key)) fan.cones.push_back(std::move(c));
  }
  return seen.size();
}

// Facet-defining ray subsets of a cone, computed in the span of its rays
// modulo lineality. Faces are the intersections of facets.
inline std::set<std::vector<std::size_t>> cone_faces(const Cone& c) {
  const std::size_t m = c.key.size();
  std::set<std::vector<std::size_t>> faces;
  std::vector<std::size_t> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  faces.insert(all);
  if (m == 0) return faces;
  const std::size_t d = c.dim;
  // coordinates on the span: express rays in a basis chosen by rref pivots
  const auto e = rref(to_rational(IntegerMatrix::from_rows(c.key, c.key.front().size())));
  std::vector<Vec<Rational>> local;
  for (const auto& r : c.key) {
    Vec<Rational> x;
    for (auto p : e.pivots) x.emplace_back(r[p]);
    local.push_back(std::move(x));
  }
  std::vector<std::vector<std::size_t>> facets;
  if (d == 1) {
    facets.push_back({});
  } else {
    detail::for_each_combination(m, d - 1, [&](const std::vector<std::size_t>& idx) {
      RationalMatrix a(d - 1, d);
      for (std::size_t r = 0; r < d - 1; ++r)
        for (std::size_t j = 0; j < d; ++j) a(r, j) = local[idx[r]][j];
      const auto ker = kernel_basis(a);
      if (ker.size() != 1) return;
      bool pos = false, neg = false;
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < m; ++i) {
        const Rational s = dot(ker[0], local[i]);
        if (s > 0) pos = true;
        if (s < 0) neg = true;
        if (s == 0) on.push_back(i);
      }
      if (pos && neg) return;
      if (std::find(facets.begin(), facets.end(), on) == facets.end()) facets.push_back(on);
    });
  }
  std::vector<std::vector<std::size_t>> frontier(facets.begin(), facets.end());
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& f : frontier) {
      if (!faces.insert(f).second) continue;
      for (const auto& g : facets) {
        std::vector<std::size_t> h;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(h));
        if (!faces.count(h)) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  return faces;
}

// tau is a face of sigma (both cones of the same fan).
inline bool is_face(const Cone& tau, const Cone& sigma) {
  std::vector<std::size_t> idx;
  for (const auto& r : tau.key) {
    auto it = std::find(sigma.key.begin(), sigma.key.end(), r);
    if (it == sigma.key.end()) return false;
    idx.push_back(static_cast<std::size_t>(it - sigma.key.begin()));
  }
  std::sort(idx.begin(), idx.end());
  return cone_faces(sigma).count(idx) > 0;
}

inline std::vector<std::size_t> f_vector(const Fan& fan) {
  std::vector<std::size_t> f;
  for (const auto& c : fan.cones) {
    if (f.size() <= c.dim) f.resize(c.dim + 1, 0);
    ++f[c.dim];
  }
  return f;
}

// Orbits of the symmetry group on the cones, computed from the cones themselves.
inline std::vector<std::vector<std::size_t>> cone_orbits(const Fan& fan) {
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<bool> done(fan.cones.size(), false);
  for (std::size_t i = 0; i < fan.cones.size(); ++i) {
    if (done[i]) continue;
    std::set<std::size_t> orbit;
    for (const auto& g : fan.group) {
      const auto pi = coordinate_permutation(fan.coords, g);
      std::vector<Vec<Integer>> img;
      for (const auto& r : fan.cones[i].rays) img.push_back(act(pi, r));
      const auto j = fan.find(make_cone(fan.quotient, img).key);
      if (!j) throw std::logic_error("cone_orbits: fan is not closed under symmetry");
      orbit.insert(*j);
    }
    for (auto j : orbit) done[j] = true;
    orbits.emplace_back(orbit.begin(), orbit.end());
  }
  return orbits;
}

inline std::vector<std::size_t> f_vector_mod_symmetry(const Fan& fan) {
  std::vector<std::size_t> f;
  for (const auto& o : cone_orbits(fan)) {
    const auto d = fan.cones[o.front()].dim;
    if (f.size() <= d) f.resize(d + 1, 0);
    ++f[d];
  }
  return f;
}

inline std::vector<std::size_t> maximal_cones(const Fan& fan) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fan.cones.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < fan.cones.size() && maximal; ++j)
      if (j != i && fan.cones[j].dim > fan.cones[i].dim && is_face(fan.cones[i], fan.cones[j])) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fan assembly from representatives

struct ConeRepresentative {
  std::size_t id = 0;
  std::vector<std::vector<Subset>> rays;  // each ray is a sum of e_lambda
  std::size_t expected_orbit = 0;
};

struct BuiltFan {
  Fan fan;
  std::vector<std::size_t> orbit_sizes;  // aligned with the representatives
};

inline BuiltFan build_fan(const CoordinateSystem& cs, const std::vector<ConeRepresentative>& reps) {
  BuiltFan out{empty_fan(cs), {}};
  add_orbit(out.fan, {}, 0);
  for (const auto& r : reps) {
    std::vector<Vec<Integer>> rays;
    for (const auto& support : r.rays) rays.push_back(coordinate_vector(cs, support));
    out.orbit_sizes.push_back(add_orbit(out.fan, rays, r.id));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fan validity

// Extreme rays of {z >= 0 : A z = 0} by brute force over minimal supports.
inline std::vector<Vec<Rational>> nonnegative_kernel_rays(const RationalMatrix& a) {
  const std::size_t m = a.cols();
  std::vector<Vec<Rational>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < m; ++j)
      if (mask >> j & 1U) cols.push_back(j);
    RationalMatrix sub(a.rows(), cols.size());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < cols.size(); ++k) sub(i, k) = a(i, cols[k]);
    const auto ker = kernel_basis(sub);
    if (ker.size() != 1) continue;
    const auto& z = ker[0];
    const bool all_pos = std::all_of(z.begin(), z.end(), [](const Rational& x) { return x > 0; });
    const bool all_neg = std::all_of(z.begin(), z.end(), [](const Rational& x) { return x < 0; });
    if (!all_pos && !all_neg) continue;
    Vec<Rational> full(m, Rational(0));
    for (std::size_t k = 0; k < cols.size(); ++k) full[cols[k]] = all_pos ? z[k] : Rational(-z[k]);
    out.push_back(std::move(full));
  }
  return out;
}

struct FanValidity {
  bool ok = true;
  std::string message;
};

// For simplicial fans: every face of every cone is a cone, and any two cones
// meet exactly in the cone spanned by their common rays.
inline FanValidity check_fan(const Fan& fan) {
  const std::size_t q = fan.quotient_dim();
  for (const auto& c : fan.cones) {
    if (c.dim != c.key.size()) return {false, "check_fan: cone is not simplicial"};
    for (std::size_t mask = 0; mask < (std::size_t{1} << c.key.size()); ++mask) {
      RayKey sub;
      for (std::size_t j = 0; j < c.key.size(); ++j)
        if (mask >> j & 1U) sub.push_back(c.key[j]);
      if (!fan.find(sub)) return {false, "check_fan: a face of a cone is missing"};
    }
  }
  for (std::size_t i = 0; i < fan.cones.size(); ++i)
    for (std::size_t j = i + 1; j < fan.cones.size(); ++j) {
      const auto& a = fan.cones[i].key;
      const auto& b = fan.cones[j].key;
      if (a.empty() || b.empty()) continue;
      // z = (alpha, beta) >= 0 with sum alpha_k a_k = sum beta_k b_k
      RationalMatrix m(q, a.size() + b.size());
      for (std::size_t r = 0; r < q; ++r) {
        for (std::size_t k = 0; k < a.size(); ++k) m(r, k) = Rational(a[k][r]);
        for (std::size_t k = 0; k < b.size(); ++k) m(r, a.size() + k) = Rational(-b[k][r]);
      }
      for (const auto& z : nonnegative_kernel_rays(m))
        for (std::size_t k = 0; k < a.size(); ++k)
          if (z[k] != 0 && std::find(b.begin(), b.end(), a[k]) == b.end())
            return {false, "check_fan: two cones overlap beyond their common face"};
    }
  return {};
}

// Every cone's primitive generators extend to a lattice basis of N / L.
inline bool check_strictly_simplicial(const Fan& fan) {
  for (const auto& c : fan.cones) {
    if (c.key.empty()) continue;
    if (c.dim != c.key.size()) return false;
    const auto f = smith_normal_form(IntegerMatrix::from_rows(c.key, fan.quotient_dim())).invariant_factors();
    if (!std::all_of(f.begin(), f.end(), [](const Integer& x) { return x == 1; })) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Coarsening: merge the pairs of maximal cones glued along a non-face.

struct Coarsening {
  Fan fan;
  std::vector<std::size_t> merged;                       // indices of merged cones in fan
  std::vector<std::pair<RayKey, RayKey>> replaced_pairs;  // the glued maximal cones
};

inline Coarsening coarsen(const Fan& fine, const std::vector<Vec<Integer>>& merged_rays) {
  Coarsening out{fine, {}, {}};
  Fan scratch = empty_fan(fine.coords);
  add_orbit(scratch, merged_rays, 0);
  const auto old_max = maximal_cones(fine);
  std::set<RayKey> drop;
  for (const auto& m : scratch.cones) {
    std::vector<RayKey> absorbed;
    for (const auto& c : fine.cones) {
      const bool inside = std::all_of(c.key.begin(), c.key.end(),
                                      [&](const Vec<Integer>& r) { return std::find(m.key.begin(), m.key.end(), r) != m.key.end(); });
      if (!inside || c.key.empty() || is_face(c, m)) continue;
      drop.insert(c.key);
      if (c.dim == m.dim) absorbed.push_back(c.key);
    }
    if (absorbed.size() != 2) throw std::logic_error("coarsen: merged cone does not glue exactly two maximal cones");
    out.replaced_pairs.emplace_back(absorbed[0], absorbed[1]);
  }
  std::vector<Cone> kept;
  for (const auto& c : fine.cones)
    if (!drop.count(c.key)) kept.push_back(c);
  out.fan.cones = std::move(kept);
  for (auto c : scratch.cones) {
    c.orbit = 0;
    out.merged.push_back(out.fan.cones.size());
    out.fan.cones.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The translation certificate: for every non-maximal tau, the annihilators of
// the spans of the maximal cones above tau have combined rank
// ambient - dim <tau> (dim <tau> includes the lineality).

struct TranslationCheck {
  std::size_t cone = 0;
  std::size_t span_dim = 0;
  std::size_t maximal_above = 0;
  std::size_t rank = 0;
  std::size_t required = 0;
  bool pass = false;
};

inline std::vector<Vec<Rational>> span_generators(const Fan& fan, const Cone& c) {
  std::vector<Vec<Rational>> out;
  for (const auto& b : fan.lineality.basis()) out.push_back(to_rational(b));
  for (const auto& r : c.rays) out.push_back(to_rational(r));
  return out;
}

inline std::size_t span_dim(const Fan& fan, const Cone& c) {
  return rank(RationalMatrix::from_rows(span_generators(fan, c), fan.ambient()));
}

// Rows of A_sigma: a basis of the annihilator of <sigma>, in reduced echelon form.
inline std::vector<Vec<Rational>> annihilator(const Fan& fan, const Cone& c) {
  return kernel_basis(RationalMatrix::from_rows(span_generators(fan, c), fan.ambient()));
}

inline std::vector<TranslationCheck> verify_translation_lemma(const Fan& fan) {
  const auto maxi = maximal_cones(fan);
  const std::set<std::size_t> is_max(maxi.begin(), maxi.end());
  std::vector<TranslationCheck> out;
  for (std::size_t t = 0; t < fan.cones.size(); ++t) {
    if (is_max.count(t)) continue;
    TranslationCheck chk;
    chk.cone = t;
    chk.span_dim = span_dim(fan, fan.cones[t]);
    chk.required = fan.ambient() - chk.span_dim;
    std::vector<Vec<Rational>> rows;
    for (auto s : maxi)
      if (is_face(fan.cones[t], fan.cones[s])) {
        ++chk.maximal_above;
        for (auto& r : annihilator(fan, fan.cones[s])) rows.push_back(std::move(r));
      }
    chk.rank = rows.empty() ? 0 : rank(RationalMatrix::from_rows(rows, fan.ambient()));
    chk.pass = chk.maximal_above > 0 && chk.rank == chk.required;
    out.push_back(chk);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The fans for n = 3 and n = 4

namespace detail {
inline std::vector<Subset> supports(std::initializer_list<const char*> labels) {
  std::vector<Subset> out;
  for (const char* l : labels) out.push_back(parse_subset(l));
  return out;
}
}  // namespace detail

// Representatives of the cone orbits of the tropical complete flag variety
// for n = 4, with their orbit sizes under S4 x duality.
inline std::vector<ConeRepresentative> tfl4_representatives() {
  using detail::supports;
  const auto e1 = supports({"1"}), e12 = supports({"12"}), e23 = supports({"23"}), e34 = supports({"34"});
  const auto e123 = supports({"123"}), e234 = supports({"234"}), e124 = supports({"124"});
  const auto f12 = supports({"1", "2", "12"}), f34 = supports({"3", "4", "34"}), f14 = supports({"1", "4", "14"});
  return {
      {1, {e1}, 8},
      {2, {e12}, 6},
      {3, {f12}, 6},
      {4, {e1, e23}, 24},
      {5, {e1, e123}, 12},
      {6, {e1, e234}, 4},
      {7, {e1, f12}, 24},
      {8, {e12, e34}, 3},
      {9, {e12, f34}, 12},
      {10, {e1, e23, e124}, 24},
      {11, {e1, e23, f14}, 24},
      {12, {e1, e123, f14}, 12},
      {13, {e1, e234, f12}, 12},
      {14, {e12, e34, f12}, 6},
  };
}

inline BuiltFan build_tfl4() { return build_fan(complete_coordinates(4), tfl4_representatives()); }

// The rays of the merged cone that coarsens the n = 4 fan.
inline std::vector<Vec<Integer>> f4prime_merged_rays() {
  const auto cs = complete_coordinates(4);
  using detail::supports;
  return {coordinate_vector(cs, supports({"12"})), coordinate_vector(cs, supports({"34"})),
          coordinate_vector(cs, supports({"1", "2", "12"})), coordinate_vector(cs, supports({"3", "4", "34"}))};
}

inline Coarsening build_f4prime() { return coarsen(build_tfl4().fan, f4prime_merged_rays()); }

// For n = 3 the fan is the lineality space together with the three rays e_i.
inline BuiltFan build_tfl3() {
  return build_fan(complete_coordinates(3), {{1, {detail::supports({"1"})}, 3}});
}

// ---------------------------------------------------------------------------
// Initial forms against faces of the weighted subdivision

// With P the weighted face of fm at v, every quadric whose restriction to P
// is nonzero restricts to P as the w-initial form of its restriction to fm.
inline bool check_initial_face(const FlagMatroid& fm, const std::map<Subset, Rational>& w, const Vec<Rational>& v) {
  std::vector<int> ranks = fm.ranks();
  const FlagMatroid p = weighted_face(WeightedConfig::from_flag(fm, w), v);
  std::map<Var, Rational, std::less<>> weights;
  for (Subset b : fm.bases_union()) {
    auto it = w.find(b);
    weights[Var::p(b)] = it == w.end() ? Rational(0) : it->second;
  }
  for (const auto& f : plucker_quadrics(ranks, fm.n())) {
    const Polynomial fp = restrict_to(f, p);
    if (fp.is_zero()) continue;
    const Polynomial fq = restrict_to(f, fm);
    if (fp != fq.initial_form(weights)) return false;
  }
  return true;
}

}  // namespace flagtrop
