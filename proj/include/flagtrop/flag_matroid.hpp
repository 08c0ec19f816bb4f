#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagtrop/hull.hpp"
#include "flagtrop/matroid.hpp"

namespace flagtrop {

class FlagMatroid {
 public:
  FlagMatroid() = default;
  explicit FlagMatroid(std::vector<Matroid> constituents) : constituents_(std::move(constituents)) {
    if (constituents_.empty()) throw std::invalid_argument("flag matroid needs at least one constituent");
    n_ = constituents_.front().n();
    for (std::size_t i = 0; i < constituents_.size(); ++i) {
      if (constituents_[i].n() != n_) throw std::invalid_argument("constituents on different ground sets");
      if (i > 0 && constituents_[i].rank() < constituents_[i - 1].rank())
        throw std::invalid_argument("rank vector not weakly increasing");
    }
  }

  // Complete-flag style construction from nonbases: every r-subset (r in
  // ranks) not listed is a basis of the rank-r constituent.
  static FlagMatroid from_nonbases(int n, const std::vector<int>& ranks, const std::vector<Subset>& nonbases) {
    const std::set<Subset> non(nonbases.begin(), nonbases.end());
    for (Subset s : non)
      if (!is_subset(s, ground_set(n)) ||
          std::find(ranks.begin(), ranks.end(), cardinality(s)) == ranks.end())
        throw std::invalid_argument("nonbasis " + to_label(s) + " does not fit the rank vector");
    std::vector<Matroid> cs;
    for (int r : ranks) {
      std::vector<Subset> bases;
      for (Subset s : k_subsets(n, r))
        if (!non.count(s)) bases.push_back(s);
      if (bases.empty()) throw std::invalid_argument("rank " + std::to_string(r) + " constituent has no bases");
      cs.push_back(Matroid::from_bases(n, std::move(bases)));
    }
    return FlagMatroid(std::move(cs));
  }

  static FlagMatroid uniform(const std::vector<int>& ranks, int n) {
    std::vector<Matroid> cs;
    for (int r : ranks) cs.push_back(Matroid::uniform(r, n));
    return FlagMatroid(std::move(cs));
  }

  int n() const { return n_; }
  std::size_t length() const { return constituents_.size(); }
  const std::vector<Matroid>& constituents() const { return constituents_; }
  const Matroid& operator[](std::size_t i) const { return constituents_[i]; }
  std::vector<int> ranks() const {
    std::vector<int> r;
    for (const auto& m : constituents_) r.push_back(m.rank());
    return r;
  }

  // B(Q): union of all constituent bases, sorted graded-lexicographically.
  std::vector<Subset> bases_union() const {
    std::vector<Subset> out;
    for (const auto& m : constituents_) out.insert(out.end(), m.bases().begin(), m.bases().end());
    sort_bases(out);
    return out;
  }
  bool in_bases(Subset s) const {
    for (const auto& m : constituents_)
      if (m.rank() == cardinality(s) && m.is_basis(s)) return true;
    return false;
  }

  // r-subsets (r in the rank vector) that are not bases.
  std::vector<Subset> nonbases() const {
    std::vector<Subset> out;
    for (const auto& m : constituents_)
      for (Subset s : k_subsets(n_, m.rank()))
        if (!m.is_basis(s)) out.push_back(s);
    sort_bases(out);
    return out;
  }

  bool operator==(const FlagMatroid& o) const = default;

 private:
  int n_ = 0;
  std::vector<Matroid> constituents_;
};

// Index i such that constituent i is not a quotient of constituent i+1.
inline std::optional<std::size_t> quotient_violation(const FlagMatroid& fm) {
  for (std::size_t i = 0; i + 1 < fm.length(); ++i)
    if (!is_quotient(fm[i + 1], fm[i])) return i;
  return std::nullopt;
}
inline bool validate_flag(const FlagMatroid& fm) { return !quotient_violation(fm); }

// Drops repeated constituents of equal rank, which must coincide.
inline FlagMatroid normalize(const FlagMatroid& fm) {
  std::vector<Matroid> out;
  for (const auto& m : fm.constituents()) {
    if (!out.empty() && out.back().rank() == m.rank()) {
      if (!(out.back() == m)) throw std::invalid_argument("normalize: equal-rank constituents differ");
      continue;
    }
    out.push_back(m);
  }
  return FlagMatroid(std::move(out));
}

// Componentwise face minimizing <e_B, v> + w_k(B) in every block. `weights`
// is empty or holds one vector per constituent, indexed like its bases.
inline FlagMatroid flag_face(const FlagMatroid& fm, const Vec<Rational>& v,
                             const std::vector<Vec<Rational>>& weights = {}) {
  std::vector<Matroid> out;
  for (std::size_t i = 0; i < fm.length(); ++i) out.push_back(face(fm[i], v, weights.empty() ? Vec<Rational>{} : weights[i]));
  return FlagMatroid(std::move(out));
}

inline FlagMatroid flag_restrict(const FlagMatroid& fm, Subset lambda, bool normalized = true) {
  std::vector<Matroid> out;
  for (const auto& m : fm.constituents()) out.push_back(restrict(m, lambda));
  FlagMatroid r(std::move(out));
  return normalized ? normalize(r) : r;
}

inline FlagMatroid flag_contract(const FlagMatroid& fm, Subset lambda, bool normalized = true) {
  std::vector<Matroid> out;
  for (const auto& m : fm.constituents()) out.push_back(contract(m, lambda));
  FlagMatroid r(std::move(out));
  return normalized ? normalize(r) : r;
}

// Q* = (Q_s*, ..., Q_1*).
inline FlagMatroid flag_dual(const FlagMatroid& fm) {
  std::vector<Matroid> out;
  for (auto it = fm.constituents().rbegin(); it != fm.constituents().rend(); ++it) out.push_back(dual(*it));
  return FlagMatroid(std::move(out));
}

inline FlagMatroid flag_direct_sum(const FlagMatroid& a, const FlagMatroid& b) {
  if (a.length() != b.length()) throw std::invalid_argument("flag_direct_sum: lengths differ");
  std::vector<Matroid> out;
  for (std::size_t i = 0; i < a.length(); ++i) out.push_back(direct_sum(a[i], b[i]));
  return normalize(FlagMatroid(std::move(out)));
}

// Componentwise direct sum on a common ground set with disjoint supports.
inline FlagMatroid flag_disjoint_union(const FlagMatroid& a, const FlagMatroid& b) {
  if (a.length() != b.length()) throw std::invalid_argument("flag_disjoint_union: lengths differ");
  std::vector<Matroid> out;
  for (std::size_t i = 0; i < a.length(); ++i) out.push_back(disjoint_union(a[i], b[i]));
  return FlagMatroid(std::move(out));
}

inline FlagMatroid relabel(const FlagMatroid& fm, const std::vector<int>& perm) {
  std::vector<Matroid> out;
  for (const auto& m : fm.constituents()) out.push_back(relabel(m, perm));
  return FlagMatroid(std::move(out));
}

// Element (perm, dualize) of S2 x Sn. perm[k-1] is the image of k.
struct SymmetryElement {
  std::vector<int> perm;
  bool dualize = false;

  static SymmetryElement identity(int n) {
    SymmetryElement g;
    g.perm.resize(static_cast<std::size_t>(n));
    std::iota(g.perm.begin(), g.perm.end(), 1);
    return g;
  }
  SymmetryElement inverse() const {
    SymmetryElement g{std::vector<int>(perm.size()), dualize};
    for (std::size_t k = 0; k < perm.size(); ++k) g.perm[static_cast<std::size_t>(perm[k] - 1)] = static_cast<int>(k + 1);
    return g;
  }
  // (this * o)(x) = this(o(x)); relabeling commutes with duality.
  SymmetryElement operator*(const SymmetryElement& o) const {
    SymmetryElement g{std::vector<int>(perm.size()), dualize != o.dualize};
    for (std::size_t k = 0; k < perm.size(); ++k) g.perm[k] = perm[static_cast<std::size_t>(o.perm[k] - 1)];
    return g;
  }
  bool operator==(const SymmetryElement& o) const = default;
};

inline FlagMatroid apply_symmetry(const SymmetryElement& g, const FlagMatroid& fm) {
  FlagMatroid out = relabel(fm, g.perm);
  return g.dualize ? flag_dual(out) : out;
}

inline bool dual_preserves_ranks(const std::vector<int>& ranks, int n) {
  std::vector<int> d;
  for (auto it = ranks.rbegin(); it != ranks.rend(); ++it) d.push_back(n - *it);
  return d == ranks;
}

// S2 x Sn when duality preserves the rank vector, otherwise Sn.
inline std::vector<SymmetryElement> symmetry_group(int n, bool with_duality) {
  std::vector<SymmetryElement> out;
  auto id = SymmetryElement::identity(n);
  do {
    out.push_back({id.perm, false});
    if (with_duality) out.push_back({id.perm, true});
  } while (std::next_permutation(id.perm.begin(), id.perm.end()));
  return out;
}

using FlagKey = std::vector<std::vector<Subset>>;

inline FlagKey serialize_key(const FlagMatroid& fm) {
  FlagKey key;
  for (const auto& m : fm.constituents()) key.push_back(m.bases());
  return key;
}

// Lexicographically minimal serialized form over the orbit.
inline FlagKey canonical_key(const FlagMatroid& fm, const std::vector<SymmetryElement>& group) {
  std::optional<FlagKey> best;
  for (const auto& g : group) {
    FlagKey k = serialize_key(apply_symmetry(g, fm));
    if (!best || k < *best) best = std::move(k);
  }
  return *best;
}

// Rank of the affine span of the Minkowski sum of the constituent polytopes.
inline std::size_t polytope_dim(const FlagMatroid& fm) {
  std::vector<Vec<Rational>> diffs;
  const auto n = static_cast<std::size_t>(fm.n());
  for (const auto& m : fm.constituents()) {
    const Subset b0 = m.bases().front();
    for (Subset b : m.bases()) {
      if (b == b0) continue;
      Vec<Rational> d(n, Rational(0));
      for (int k = 1; k <= fm.n(); ++k) d[static_cast<std::size_t>(k - 1)] = int(contains(b, k)) - int(contains(b0, k));
      diffs.push_back(std::move(d));
    }
  }
  return diffs.empty() ? 0 : rank(RationalMatrix::from_rows(diffs, n));
}

inline Point indicator(Subset s, int n) {
  Point p(static_cast<std::size_t>(n), Rational(0));
  for (int k : elements(s)) p[static_cast<std::size_t>(k - 1)] = 1;
  return p;
}

// All points sum_k e_{lambda_k} over lambda in Q1 x ... x Qs.
inline std::vector<Point> minkowski_points(const FlagMatroid& fm) {
  std::vector<Point> pts{Point(static_cast<std::size_t>(fm.n()), Rational(0))};
  for (const auto& m : fm.constituents()) {
    std::vector<Point> next;
    for (const auto& p : pts)
      for (Subset b : m.bases()) {
        Point q = p;
        for (int k : elements(b)) q[static_cast<std::size_t>(k - 1)] += 1;
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

// The face's polytope (bases contained in the ambient's, blockwise) meets the
// relative interior of the ambient polytope: the face barycenter satisfies
// every ambient facet inequality strictly.
inline bool is_internal(const FlagMatroid& face_fm, const FlagMatroid& ambient) {
  if (face_fm.n() != ambient.n() || face_fm.ranks() != ambient.ranks())
    throw std::invalid_argument("is_internal: shapes differ");
  for (std::size_t i = 0; i < ambient.length(); ++i)
    for (Subset b : face_fm[i].bases())
      if (!ambient[i].is_basis(b)) throw std::invalid_argument("is_internal: not contained in the ambient polytope");
  const auto hull = hull_facets(minkowski_points(ambient));
  const Point centre = hull.chart.project(barycenter(minkowski_points(face_fm)));
  for (const auto& f : hull.facets)
    if (f.slack(centre) <= 0) return false;
  return true;
}

// Every flag matroid of the given (strictly increasing) rank vector on [n].
inline std::vector<FlagMatroid> all_flag_matroids(const std::vector<int>& ranks, int n) {
  std::vector<std::vector<Matroid>> level;
  for (int r : ranks) level.push_back(all_matroids(n, r));
  std::vector<std::vector<Matroid>> chains{{}};
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    std::vector<std::vector<Matroid>> next;
    for (const auto& c : chains)
      for (const auto& m : level[i])
        if (c.empty() || is_quotient(m, c.back())) {
          auto d = c;
          d.push_back(m);
          next.push_back(std::move(d));
        }
    chains = std::move(next);
  }
  std::vector<FlagMatroid> out;
  for (auto& c : chains) out.emplace_back(std::move(c));
  return out;
}

struct OrbitClass {
  FlagMatroid representative;
  std::size_t orbit_size = 0;
  std::size_t dim = 0;
};

// Orbit representatives (lexicographically minimal serialized forms) sorted
// by that key.
inline std::vector<OrbitClass> enumerate_orbits(const std::vector<int>& ranks, int n) {
  if (n > 5) throw std::invalid_argument("enumerate_orbits: n must be at most 5");
  for (std::size_t i = 1; i < ranks.size(); ++i)
    if (ranks[i] <= ranks[i - 1]) throw std::invalid_argument("enumerate_orbits: ranks must increase strictly");
  const auto group = symmetry_group(n, dual_preserves_ranks(ranks, n));
  std::map<FlagKey, OrbitClass> classes;
  std::set<FlagKey> visited;
  for (const auto& fm : all_flag_matroids(ranks, n)) {
    if (visited.count(serialize_key(fm))) continue;
    std::set<FlagKey> orbit;
    for (const auto& g : group) orbit.insert(serialize_key(apply_symmetry(g, fm)));
    visited.insert(orbit.begin(), orbit.end());
    const FlagKey& rep_key = *orbit.begin();
    std::vector<Matroid> cs;
    for (const auto& bases : rep_key) cs.emplace_back(n, bases);
    FlagMatroid rep(std::move(cs));
    classes.emplace(rep_key, OrbitClass{rep, orbit.size(), polytope_dim(rep)});
  }
  std::vector<OrbitClass> out;
  for (auto& [k, c] : classes) out.push_back(std::move(c));
  return out;
}

}  // namespace flagtrop
