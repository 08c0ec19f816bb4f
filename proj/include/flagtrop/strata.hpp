#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "flagtrop/flag_matroid.hpp"
#include "flagtrop/polynomial.hpp"
#include "flagtrop/subdivision.hpp"
#include "flagtrop/tropical_flag.hpp"

namespace flagtrop {

// A complete chain lambda_1 < ... < lambda_{n-1}, one subset per rank.
using Chain = std::vector<Subset>;

inline Chain standard_chain(int n) {
  Chain c;
  for (int r = 1; r < n; ++r) c.push_back(ground_set(r));
  return c;
}

// All complete chains whose members are bases of the matching constituents.
inline std::vector<Chain> complete_chains(const FlagMatroid& fm) {
  const auto ranks = fm.ranks();
  for (std::size_t i = 0; i < ranks.size(); ++i)
    if (ranks[i] != static_cast<int>(i) + 1) throw std::invalid_argument("complete_chains: not a complete flag matroid");
  std::vector<Chain> out;
  Chain cur;
  auto rec = [&](auto&& self, Subset prev) -> void {
    if (cur.size() == ranks.size()) {
      out.push_back(cur);
      return;
    }
    for (int k = 1; k <= fm.n(); ++k) {
      if (contains(prev, k)) continue;
      const Subset next = prev | element(k);
      if (!fm[cur.size()].is_basis(next)) continue;
      cur.push_back(next);
      self(self, next);
      cur.pop_back();
    }
  };
  rec(rec, Subset{0});
  return out;
}

// Permutation sending the chain to the standard chain: the element added at
// step r goes to r.
inline SymmetryElement chain_permutation(const Chain& chain, int n) {
  SymmetryElement g{std::vector<int>(static_cast<std::size_t>(n), 0), false};
  Subset prev = 0;
  for (std::size_t r = 0; r < chain.size(); ++r) {
    const Subset added = chain[r] & ~prev;
    if (cardinality(added) != 1 || (prev & ~chain[r]) != 0) throw std::invalid_argument("chain_permutation: not a complete chain");
    g.perm[static_cast<std::size_t>(elements(added)[0] - 1)] = static_cast<int>(r) + 1;
    prev = chain[r];
  }
  const auto rest = elements(ground_set(n) & ~prev);
  if (rest.size() != 1) throw std::invalid_argument("chain_permutation: chain does not have length n - 1");
  g.perm[static_cast<std::size_t>(rest[0] - 1)] = n;
  return g;
}

struct Standardized {
  SymmetryElement perm;
  FlagMatroid fm;
};

// Prefers the identity when the standard chain is already present.
inline Standardized standardize(const FlagMatroid& fm) {
  const auto chains = complete_chains(fm);
  if (chains.empty()) throw std::invalid_argument("standardize: no complete chain among the bases");
  const auto std_chain = standard_chain(fm.n());
  const Chain& pick = std::find(chains.begin(), chains.end(), std_chain) != chains.end() ? std_chain : chains.front();
  const auto g = chain_permutation(pick, fm.n());
  return {g, apply_symmetry(g, fm)};
}

// ---------------------------------------------------------------------------
// Charts

// [i-1] u {j}, the coordinate governing x_ij.
inline Subset chart_label(int i, int j) { return ground_set(i - 1) | element(j); }

inline PolyMatrix chart_matrix(int n, const std::function<bool(int, int)>& keep) {
  PolyMatrix x(static_cast<std::size_t>(n), std::vector<Polynomial>(static_cast<std::size_t>(n)));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      x[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          i == j ? Polynomial(1) : keep(i, j) ? Polynomial(Var::x(i, j)) : Polynomial();
  return x;
}

// Minor on rows 1..|lambda| and the columns of lambda.
inline Polynomial chart_minor(const PolyMatrix& x, Subset lambda) {
  const auto cols = elements(lambda);
  PolyMatrix m;
  for (std::size_t r = 0; r < cols.size(); ++r) {
    std::vector<Polynomial> row;
    for (int c : cols) row.push_back(x[r][static_cast<std::size_t>(c - 1)]);
    m.push_back(std::move(row));
  }
  return det_symbolic(m);
}

struct ChartPresentation {
  std::vector<Var> variables;
  std::vector<Polynomial> ideal;      // nonzero images of nonbases
  std::vector<Polynomial> semigroup;  // non-unit images of bases, deduplicated up to sign
};

inline void push_unique_up_to_sign(std::vector<Polynomial>& list, const Polynomial& f) {
  const auto g = f.sign_normalized();
  if (std::none_of(list.begin(), list.end(), [&](const Polynomial& h) { return h == g; })) list.push_back(g);
}

inline bool in_linear_span(const Polynomial& f, const std::vector<Polynomial>& gens);
inline std::vector<Monomial> monomials_of_degree(const std::vector<Var>& vars, int degree);

// Drops semigroup generators that are, up to sign and modulo the ideal, a
// monomial in the chart variables; those variables are generators already.
// g is a constant times a monomial times h.
inline bool monomial_multiple(const Polynomial& g, const Polynomial& h) {
  if (g.size() != h.size()) return false;
  const Monomial q = g.leading_monomial() * h.leading_monomial().inverse();
  if (q.has_negative()) return false;
  return h * Polynomial(q, g.leading_coefficient() / h.leading_coefficient()) == g;
}

// Drops ideal generators that are monomial multiples of another generator.
inline void reduce_ideal(ChartPresentation& cp) {
  std::vector<Polynomial> kept;
  for (std::size_t i = 0; i < cp.ideal.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < cp.ideal.size() && !redundant; ++k)
      if (k != i && monomial_multiple(cp.ideal[i], cp.ideal[k]) &&
          (!monomial_multiple(cp.ideal[k], cp.ideal[i]) || k < i))
        redundant = true;
    if (!redundant) kept.push_back(cp.ideal[i]);
  }
  cp.ideal = std::move(kept);
}

inline void reduce_semigroup(ChartPresentation& cp) {
  std::vector<Polynomial> kept;
  for (const auto& g : cp.semigroup) {
    bool redundant = false;
    if (g.is_monomial()) {
      redundant = g.terms().begin()->first.degree() > 1;
    } else if (!cp.ideal.empty()) {
      const int deg = std::max_element(g.terms().begin(), g.terms().end(), [](const auto& a, const auto& b) {
                        return a.first.degree() < b.first.degree();
                      })->first.degree();
      std::vector<Polynomial> span;
      for (int d = 0; d <= deg; ++d)
        for (const auto& m : monomials_of_degree(cp.variables, d))
          for (const auto& h : cp.ideal) span.push_back(h * Polynomial(m));
      for (const auto& [m, c] : g.terms())
        if ((c == 1 || c == -1) && in_linear_span(g - Polynomial(m, c), span)) redundant = true;
    }
    if (!redundant) kept.push_back(g);
  }
  cp.semigroup = std::move(kept);
}

// Requires the standard chain among the bases.
inline ChartPresentation chart_presentation(const FlagMatroid& fm) {
  const int n = fm.n();
  const auto chains = complete_chains(fm);
  if (std::find(chains.begin(), chains.end(), standard_chain(n)) == chains.end())
    throw std::invalid_argument("chart_presentation: flag matroid is not standardized");
  ChartPresentation cp;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (fm.in_bases(chart_label(i, j))) cp.variables.push_back(Var::x(i, j));
  const auto x = chart_matrix(n, [&](int i, int j) { return fm.in_bases(chart_label(i, j)); });
  for (int r = 1; r < n; ++r)
    for (Subset lambda : k_subsets(n, r)) {
      const Polynomial f = chart_minor(x, lambda);
      if (fm.in_bases(lambda)) {
        if (f.is_zero()) throw std::logic_error("chart_presentation: a basis maps to zero");
        if (!f.is_unit()) push_unique_up_to_sign(cp.semigroup, f);
      } else if (!f.is_zero()) {
        push_unique_up_to_sign(cp.ideal, f);
      }
    }
  reduce_ideal(cp);
  reduce_semigroup(cp);
  return cp;
}

// A variable occurring in g only in a term c*v, so g = 0 solves for it.
inline std::optional<Var> solvable_variable(const Polynomial& g) {
  for (const auto& [m, c] : g.terms()) {
    if (m.degree() != 1 || m.exponents()[0].second != 1) continue;
    const Var v = m.exponents()[0].first;
    const bool alone = std::all_of(g.terms().begin(), g.terms().end(),
                                   [&](const auto& t) { return t.first == m || t.first.exponent(v) == 0; });
    if (alone) return v;
  }
  return std::nullopt;
}

// Dimension of the chart variety. Generators that solve for a variable are
// eliminated first; what remains must be zero or principal, else nullopt.
inline std::optional<std::size_t> stratum_dimension(const ChartPresentation& cp) {
  std::vector<Polynomial> ideal = cp.ideal;
  std::size_t vars = cp.variables.size();
  for (bool progress = true; progress && ideal.size() > 1;) {
    progress = false;
    for (std::size_t i = 0; i < ideal.size(); ++i) {
      const auto v = solvable_variable(ideal[i]);
      if (!v) continue;
      const Rational c = ideal[i].terms().at(Monomial(*v));
      const Polynomial image = (Polynomial(Monomial(*v), c) - ideal[i]) * Polynomial(Monomial(), 1 / c);
      std::vector<Polynomial> rest;
      for (std::size_t k = 0; k < ideal.size(); ++k) {
        if (k == i) continue;
        const auto r = ideal[k].substitute(*v, image);
        if (r.is_zero()) continue;
        if (std::none_of(rest.begin(), rest.end(), [&](const Polynomial& h) { return monomial_multiple(r, h); }))
          rest.push_back(r);
      }
      ideal = std::move(rest);
      --vars;
      progress = true;
      break;
    }
  }
  if (ideal.empty()) return vars;
  if (ideal.size() == 1 && vars > 0) return vars - 1;
  return std::nullopt;
}

inline std::string ring_string(const ChartPresentation& cp) {
  std::string s = "C[";
  for (std::size_t i = 0; i < cp.variables.size(); ++i) s += (i ? "," : "") + default_name(cp.variables[i]);
  s += "]";
  if (!cp.ideal.empty()) {
    s += "/<";
    for (std::size_t i = 0; i < cp.ideal.size(); ++i) s += (i ? "," : "") + cp.ideal[i].to_string();
    s += ">";
  }
  return s;
}

// ---------------------------------------------------------------------------
// The psi map x_ij -> p_{[i-1] u j} / p_{[i]}

inline Polynomial psi_image(const Polynomial& f) {
  Polynomial g = f;
  for (const auto& v : f.variables()) {
    if (v.kind != Var::Kind::Chart) continue;
    const Monomial image = Monomial(Var::p(chart_label(v.i, v.j))) * Monomial(Var::p(ground_set(v.i)), -1);
    g = g.substitute_monomial(v, image);
  }
  return g.clear_denominators();
}

inline std::vector<Monomial> monomials_of_degree(const std::vector<Var>& vars, int degree) {
  std::vector<Monomial> out{Monomial()};
  for (int d = 0; d < degree; ++d) {
    std::set<Monomial, LexDescending> next;
    for (const auto& m : out)
      for (const auto& v : vars) next.insert(m * Monomial(v));
    out.assign(next.begin(), next.end());
  }
  return out;
}

// f lies in the linear span of the given polynomials.
inline bool in_linear_span(const Polynomial& f, const std::vector<Polynomial>& gens) {
  std::vector<Monomial> basis;
  auto idx = [&](const Monomial& m) {
    auto it = std::find(basis.begin(), basis.end(), m);
    if (it != basis.end()) return static_cast<std::size_t>(it - basis.begin());
    basis.push_back(m);
    return basis.size() - 1;
  };
  for (const auto& g : gens)
    for (const auto& [m, c] : g.terms()) idx(m);
  for (const auto& [m, c] : f.terms()) idx(m);
  RationalMatrix a(basis.size(), gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (const auto& [m, c] : gens[k].terms()) a(idx(m), k) = c;
  Vec<Rational> b(basis.size(), Rational(0));
  for (const auto& [m, c] : f.terms()) b[idx(m)] = c;
  return solve(a, b).has_value();
}

// Every ideal generator, pushed through psi with denominators cleared, is a
// combination of restricted quadrics times monomials in the bases of fm.
inline bool psi_compatible(const FlagMatroid& fm, const ChartPresentation& cp) {
  std::vector<Polynomial> quadrics;
  for (const auto& f : plucker_quadrics(fm.ranks(), fm.n())) {
    const auto g = restrict_to(f, fm);
    if (!g.is_zero()) quadrics.push_back(g);
  }
  std::vector<Var> vars;
  for (Subset b : fm.bases_union()) vars.push_back(Var::p(b));
  for (const auto& f : cp.ideal) {
    const auto g = psi_image(f);
    const int deg = g.terms().begin()->first.degree();
    if (deg < 2) return false;
    std::vector<Polynomial> gens;
    for (const auto& m : monomials_of_degree(vars, deg - 2))
      for (const auto& q : quadrics) gens.push_back(q * Polynomial(m));
    if (!in_linear_span(g, gens)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Morphism criterion

// Pairs (i, a) with a not in lambda_{i+1} and lambda_i u a a basis of Q_{i+1}.
inline std::size_t criterion_count(const FlagMatroid& q, const Chain& chain) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Subset prev = i == 0 ? Subset{0} : chain[i - 1];
    for (int a = 1; a <= q.n(); ++a)
      if (!contains(chain[i], a) && q[i].is_basis(prev | element(a))) ++count;
  }
  return count;
}

inline bool morphism_criterion(const FlagMatroid& p, const FlagMatroid& q, const Chain& chain, std::size_t d) {
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (i >= p.length() || !p[i].is_basis(chain[i])) throw std::invalid_argument("morphism_criterion: chain is not in B(P)");
  return criterion_count(q, chain) == d;
}

inline std::size_t standardized_dimension(const FlagMatroid& q) {
  const auto d = stratum_dimension(chart_presentation(standardize(q).fm));
  if (!d) throw std::invalid_argument("standardized_dimension: ideal is neither zero nor principal");
  return *d;
}

// Every chain of B(P) satisfying the criterion.
inline std::vector<Chain> criterion_witnesses(const FlagMatroid& p, const FlagMatroid& q) {
  const auto d = standardized_dimension(q);
  std::vector<Chain> out;
  for (const auto& c : complete_chains(p))
    if (morphism_criterion(p, q, c, d)) out.push_back(c);
  return out;
}

inline std::string chain_string(const Chain& c) {
  std::string s = "{}";
  for (Subset l : c) s += "<" + to_string(l);
  return s;
}

// ---------------------------------------------------------------------------
// Orbit classification of full-dimensional complete flag matroids on [4]

struct Table1Row {
  int id = 0;
  std::vector<std::string> nonbases;
};

inline const std::vector<Table1Row>& table1_rows() {
  static const std::vector<Table1Row> rows = {
      {1, {"2", "4", "13", "24"}},
      {2, {"3", "4", "34", "124"}},
      {3, {"3", "4", "13", "23", "34"}},
      {4, {"3", "13", "14", "23", "34", "134"}},
      {5, {"2", "4", "24", "124", "234"}},
      {6, {"2", "13", "124"}},
      {7, {"2", "3", "23"}},
      {8, {"3", "13", "23", "34"}},
      {9, {"3", "124"}},
      {10, {"2", "124"}},
      {11, {"2", "13"}},
      {12, {"13", "24"}},
      {13, {"2"}},
      {14, {"13"}},
      {15, {}},
  };
  return rows;
}

inline FlagMatroid complete4_from_nonbases(const std::vector<std::string>& labels) {
  std::vector<Subset> nb;
  for (const auto& l : labels) nb.push_back(parse_subset(l));
  sort_bases(nb);
  return FlagMatroid::from_nonbases(4, {1, 2, 3}, nb);
}

inline FlagMatroid table1_representative(int id) {
  for (const auto& r : table1_rows())
    if (r.id == id) return complete4_from_nonbases(r.nonbases);
  throw std::out_of_range("table1_representative: no row " + std::to_string(id));
}

// Row of the representative in the same symmetry orbit, if any.
inline std::optional<int> orbit_label(const FlagMatroid& fm) {
  static const auto group = symmetry_group(4, true);
  static const auto keys = [] {
    std::vector<std::pair<FlagKey, int>> out;
    for (const auto& r : table1_rows()) out.emplace_back(canonical_key(complete4_from_nonbases(r.nonbases), group), r.id);
    return out;
  }();
  if (fm.n() != 4 || fm.ranks() != std::vector<int>{1, 2, 3}) return std::nullopt;
  const auto k = canonical_key(fm, group);
  for (const auto& [key, id] : keys)
    if (key == k) return id;
  return std::nullopt;
}

struct InternalFace {
  Subset lambda = 0;
  FlagMatroid face;
};

// Facets Q|lambda x Q/lambda of a full-dimensional Q meeting the relative
// interior of the permutahedron.
inline std::vector<InternalFace> internal_facets(const FlagMatroid& q) {
  std::vector<InternalFace> out;
  const auto uniform = FlagMatroid::uniform(q.ranks(), q.n());
  const std::size_t top = polytope_dim(q);
  for (Subset l = 1; l < ground_set(q.n()); ++l) {
    Vec<Rational> v(static_cast<std::size_t>(q.n()), Rational(0));
    for (int k : elements(l)) v[static_cast<std::size_t>(k - 1)] = -1;
    const auto f = flag_face(q, v);
    if (polytope_dim(f) + 1 == top && is_internal(f, uniform)) out.push_back({l, f});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Limit diagrams over the adjacency graph

struct LimitVertex {
  FlagMatroid cell;
  std::optional<int> orbit;
  Standardized standardized;
  ChartPresentation chart;
};

struct LimitEdge {
  std::size_t a = 0, b = 0;
  FlagMatroid face;
  bool internal = false;  // meets the relative interior of the permutahedron
  std::optional<Chain> chain;  // common chain used for both charts
  ChartPresentation chart;     // of the face in that chain's coordinates
  bool variables_included = false;
  std::optional<Chain> witness_a, witness_b;  // criterion witnesses, if any
};

struct LimitDiagram {
  std::vector<LimitVertex> vertices;
  std::vector<LimitEdge> edges;
  bool is_tree = false;
};

inline bool variables_subset(const ChartPresentation& small, const ChartPresentation& big) {
  return std::all_of(small.variables.begin(), small.variables.end(), [&](const Var& v) {
    return std::find(big.variables.begin(), big.variables.end(), v) != big.variables.end();
  });
}

inline LimitDiagram limit_report(const FlagMatroid& fm, const std::map<Subset, Rational>& w) {
  const auto s = regular_subdivision(WeightedConfig::from_flag(fm, w));
  if (!is_matroidal(s)) throw std::invalid_argument("limit_report: subdivision is not matroidal");
  LimitDiagram out;
  for (const auto& c : s.cells) {
    const auto st = standardize(c.flag);
    out.vertices.push_back({c.flag, orbit_label(c.flag), st, chart_presentation(st.fm)});
  }
  for (const auto& [a, b] : s.edges) {
    LimitEdge e;
    e.a = a;
    e.b = b;
    e.face = *cell_intersection(s.cells[a].flag, s.cells[b].flag);
    const auto& qa = s.cells[a].flag;
    const auto& qb = s.cells[b].flag;
    e.internal = is_internal(e.face, FlagMatroid::uniform(fm.ranks(), fm.n()));
    const auto chains = complete_chains(e.face);
    if (!chains.empty()) {
      const auto da = standardized_dimension(qa), db = standardized_dimension(qb);
      for (const auto& c : chains) {
        if (!e.witness_a && morphism_criterion(e.face, qa, c, da)) e.witness_a = c;
        if (!e.witness_b && morphism_criterion(e.face, qb, c, db)) e.witness_b = c;
      }
      e.chain = e.witness_a ? *e.witness_a : chains.front();
      const auto g = chain_permutation(*e.chain, fm.n());
      e.chart = chart_presentation(apply_symmetry(g, e.face));
      e.variables_included = variables_subset(e.chart, chart_presentation(apply_symmetry(g, qa))) &&
                             variables_subset(e.chart, chart_presentation(apply_symmetry(g, qb)));
    }
    out.edges.push_back(std::move(e));
  }
  out.is_tree = adjacency_graph(s).is_tree();
  return out;
}

}  // namespace flagtrop
