#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagtrop/linalg.hpp"
#include "flagtrop/subset.hpp"

namespace flagtrop {

// Witness that the exchange axiom fails: x in b1 \ b2 admits no y in b2 \ b1
// with b1 - x + y a basis.
struct ExchangeWitness {
  Subset b1 = 0;
  Subset b2 = 0;
  int x = 0;
};

inline void sort_bases(std::vector<Subset>& bases) {
  std::sort(bases.begin(), bases.end(), graded_lex_less);
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
}

// Checks shape (nonempty, equicardinal, inside [n]); throws on malformed input.
inline void check_basis_shape(int n, const std::vector<Subset>& bases) {
  if (n < 0 || n > kMaxGround) throw std::invalid_argument("ground set size out of range: " + std::to_string(n));
  if (bases.empty()) throw std::invalid_argument("empty basis set");
  const int r = cardinality(bases.front());
  for (Subset b : bases) {
    if (!is_subset(b, ground_set(n))) throw std::invalid_argument("basis " + to_label(b) + " not inside [n]");
    if (cardinality(b) != r) throw std::invalid_argument("bases of mixed cardinality");
  }
}

inline std::optional<ExchangeWitness> exchange_violation(int n, std::vector<Subset> bases) {
  check_basis_shape(n, bases);
  sort_bases(bases);
  const std::set<Subset> lookup(bases.begin(), bases.end());
  for (Subset b1 : bases)
    for (Subset b2 : bases) {
      for (int x : elements(b1 & ~b2)) {
        bool ok = false;
        for (int y : elements(b2 & ~b1))
          if (lookup.count((b1 & ~element(x)) | element(y))) {
            ok = true;
            break;
          }
        if (!ok) return ExchangeWitness{b1, b2, x};
      }
    }
  return std::nullopt;
}

inline bool validate_matroid(int n, const std::vector<Subset>& bases) { return !exchange_violation(n, bases); }

class Matroid {
 public:
  Matroid() = default;

  // Trusted constructor: bases must already satisfy the exchange axiom.
  Matroid(int n, std::vector<Subset> bases) : n_(n), bases_(std::move(bases)) {
    check_basis_shape(n_, bases_);
    sort_bases(bases_);
    rank_ = cardinality(bases_.front());
  }

  static Matroid from_bases(int n, std::vector<Subset> bases) {
    if (auto w = exchange_violation(n, bases))
      throw std::invalid_argument("basis exchange fails for " + to_label(w->b1) + ", " + to_label(w->b2) +
                                  ", x=" + std::to_string(w->x));
    return Matroid(n, std::move(bases));
  }

  static Matroid uniform(int r, int n) { return Matroid(n, k_subsets(n, r)); }

  int n() const { return n_; }
  int rank() const { return rank_; }
  const std::vector<Subset>& bases() const { return bases_; }
  bool is_basis(Subset s) const { return std::binary_search(bases_.begin(), bases_.end(), s, graded_lex_less); }

  int rank(Subset s) const {
    int best = 0;
    for (Subset b : bases_) best = std::max(best, cardinality(b & s));
    return best;
  }

  Subset closure(Subset s) const {
    const int r = rank(s);
    Subset out = s;
    for (int k = 1; k <= n_; ++k)
      if (!contains(s, k) && rank(s | element(k)) == r) out |= element(k);
    return out;
  }
  bool is_flat(Subset s) const { return closure(s) == s; }

  std::vector<Subset> flats() const {
    std::vector<Subset> out;
    for (Subset s = 0; s <= ground_set(n_); ++s)
      if (is_flat(s)) out.push_back(s);
    std::sort(out.begin(), out.end(), graded_lex_less);
    return out;
  }

  Subset support() const {
    Subset s = 0;
    for (Subset b : bases_) s |= b;
    return s;
  }
  Subset loops() const { return ground_set(n_) & ~support(); }
  bool is_loopless() const { return loops() == 0; }

  bool operator==(const Matroid& o) const = default;

 private:
  int n_ = 0;
  int rank_ = 0;
  std::vector<Subset> bases_;
};

// Flats of `bottom` are flats of `top`.
inline bool is_quotient(const Matroid& top, const Matroid& bottom) {
  if (top.n() != bottom.n()) throw std::invalid_argument("is_quotient: ground sets differ");
  for (Subset f : bottom.flats())
    if (!top.is_flat(f)) return false;
  return true;
}

inline Matroid dual(const Matroid& m) {
  std::vector<Subset> bases;
  for (Subset b : m.bases()) bases.push_back(ground_set(m.n()) & ~b);
  return Matroid(m.n(), std::move(bases));
}

// Matroids on a subset of [n] are kept on the full ground set [n]; elements
// outside their support are loops. restrict(m, l) has bases the maximal
// intersections B & l.
inline Matroid restrict(const Matroid& m, Subset lambda) {
  const int r = m.rank(lambda);
  std::vector<Subset> bases;
  for (Subset b : m.bases())
    if (cardinality(b & lambda) == r) bases.push_back(b & lambda);
  return Matroid(m.n(), std::move(bases));
}

// Contraction by l, living on [n] \ l (elements of l become loops).
inline Matroid contract(const Matroid& m, Subset lambda) {
  const int r = m.rank(lambda);
  std::vector<Subset> bases;
  for (Subset b : m.bases())
    if (cardinality(b & lambda) == r) bases.push_back(b & ~lambda);
  return Matroid(m.n(), std::move(bases));
}

// Deletion of `removed`, i.e. restriction to its complement.
inline Matroid delete_set(const Matroid& m, Subset removed) { return restrict(m, ground_set(m.n()) & ~removed); }

// Direct sum with the second ground set relabeled to n1+1..n1+n2.
inline Matroid direct_sum(const Matroid& a, const Matroid& b) {
  const int n = a.n() + b.n();
  if (n > kMaxGround) throw std::invalid_argument("direct_sum: ground set too large");
  std::vector<Subset> bases;
  for (Subset x : a.bases())
    for (Subset y : b.bases()) bases.push_back(x | (y << a.n()));
  return Matroid(n, std::move(bases));
}

// Direct sum of two matroids on the same [n] whose supports are disjoint
// (the convention used for restriction (+) contraction).
inline Matroid disjoint_union(const Matroid& a, const Matroid& b) {
  if (a.n() != b.n()) throw std::invalid_argument("disjoint_union: ground sets differ");
  if (a.support() & b.support()) throw std::invalid_argument("disjoint_union: supports overlap");
  std::vector<Subset> bases;
  for (Subset x : a.bases())
    for (Subset y : b.bases()) bases.push_back(x | y);
  return Matroid(a.n(), std::move(bases));
}

// perm[k-1] is the image of element k.
inline Subset relabel(Subset s, const std::vector<int>& perm) {
  Subset out = 0;
  for (int k : elements(s)) out |= element(perm.at(static_cast<std::size_t>(k - 1)));
  return out;
}

inline Matroid relabel(const Matroid& m, const std::vector<int>& perm) {
  std::vector<Subset> bases;
  for (Subset b : m.bases()) bases.push_back(relabel(b, perm));
  return Matroid(m.n(), std::move(bases));
}

// <e_B, v> with v indexed 0..n-1.
inline Rational pair_indicator(Subset s, const Vec<Rational>& v) {
  Rational t = 0;
  for (int k : elements(s)) t += v.at(static_cast<std::size_t>(k - 1));
  return t;
}

// Face of the matroid polytope minimizing <e_B, v> + w(B); w may be empty
// (meaning zero) or indexed like m.bases().
inline Matroid face(const Matroid& m, const Vec<Rational>& v, const Vec<Rational>& w = {}) {
  if (v.size() != static_cast<std::size_t>(m.n())) throw std::invalid_argument("face: vector length differs from n");
  std::optional<Rational> best;
  std::vector<Subset> out;
  for (std::size_t i = 0; i < m.bases().size(); ++i) {
    Rational val = pair_indicator(m.bases()[i], v);
    if (!w.empty()) val += w[i];
    if (!best || val < *best) {
      best = val;
      out.clear();
    }
    if (val == *best) out.push_back(m.bases()[i]);
  }
  return Matroid(m.n(), std::move(out));
}

// v lies in the Bergman fan iff the face M_v has no loops beyond those of M.
inline bool bergman_member(const Matroid& m, const Vec<Rational>& v) {
  return face(m, v).loops() == m.loops();
}

// All matroids of rank r on [n], by filtering subsets of the r-subsets with
// the exchange axiom.
inline std::vector<Matroid> all_matroids(int n, int r) {
  if (n > 5) throw std::invalid_argument("all_matroids: n too large for exhaustive enumeration");
  const auto candidates = k_subsets(n, r);
  std::vector<Matroid> out;
  const std::size_t total = std::size_t{1} << candidates.size();
  for (std::size_t mask = 1; mask < total; ++mask) {
    std::vector<Subset> bases;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (mask >> i & 1U) bases.push_back(candidates[i]);
    if (validate_matroid(n, bases)) out.emplace_back(n, std::move(bases));
  }
  return out;
}

}  // namespace flagtrop
