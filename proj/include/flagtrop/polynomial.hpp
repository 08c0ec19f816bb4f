#pragma once

#include <cctype>
#include <compare>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flagtrop/linalg.hpp"
#include "flagtrop/subset.hpp"

namespace flagtrop {

// A polynomial variable: either a Pluecker coordinate p_lambda or a chart
// coordinate x_ij (i < j).
struct Var {
  enum class Kind : std::uint8_t { Plucker, Chart };
  Kind kind = Kind::Plucker;
  Subset subset = 0;
  int i = 0;
  int j = 0;

  static Var p(Subset lambda) { return {Kind::Plucker, lambda, 0, 0}; }
  static Var x(int i, int j) { return {Kind::Chart, 0, i, j}; }

  // Pluecker variables are ordered by block then lexicographically; chart
  // variables by (i, j). Smaller variables are more significant in the term order.
  friend bool operator<(const Var& a, const Var& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Kind::Plucker) return a.subset != b.subset && graded_lex_less(a.subset, b.subset);
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  }
  friend bool operator==(const Var& a, const Var& b) {
    return a.kind == b.kind && a.subset == b.subset && a.i == b.i && a.j == b.j;
  }
};

// Default names: p134 for Pluecker coordinates; x_ij with i < j <= 4 uses the
// letters u,v,w,x,y,z for x12,x13,x14,x23,x24,x34, otherwise "x" + digits.
inline std::string default_name(const Var& v) {
  if (v.kind == Var::Kind::Plucker) return "p" + to_string(v.subset);
  if (v.j <= 4) {
    static const char* letters[4][5] = {{"", "", "u", "v", "w"}, {"", "", "", "x", "y"}, {"", "", "", "", "z"}, {}};
    if (v.i >= 1 && v.i < v.j) return letters[v.i - 1][v.j];
  }
  return "x" + std::to_string(v.i) + std::to_string(v.j);
}

// Sparse exponent vector, sorted by variable, no zero exponents. Negative
// exponents are permitted only transiently (Laurent substitution).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const Var& v, int e = 1) {
    if (e != 0) exps_.emplace_back(v, e);
  }

  const std::vector<std::pair<Var, int>>& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [v, e] : exps_) d += e;
    return d;
  }
  int exponent(const Var& v) const {
    for (const auto& [w, e] : exps_)
      if (w == v) return e;
    return 0;
  }
  bool has_negative() const {
    for (const auto& [v, e] : exps_)
      if (e < 0) return true;
    return false;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    auto a = exps_.begin(), b = o.exps_.begin();
    while (a != exps_.end() || b != o.exps_.end()) {
      if (b == o.exps_.end() || (a != exps_.end() && a->first < b->first)) {
        r.exps_.push_back(*a++);
      } else if (a == exps_.end() || b->first < a->first) {
        r.exps_.push_back(*b++);
      } else {
        const int e = a->second + b->second;
        if (e != 0) r.exps_.emplace_back(a->first, e);
        ++a;
        ++b;
      }
    }
    return r;
  }
  Monomial inverse() const {
    Monomial r = *this;
    for (auto& [v, e] : r.exps_) e = -e;
    return r;
  }

  // Lexicographic comparison with smaller variables more significant:
  // positive when *this is the larger monomial.
  int lex_compare(const Monomial& o) const {
    auto a = exps_.begin(), b = o.exps_.begin();
    while (a != exps_.end() || b != o.exps_.end()) {
      if (b == o.exps_.end() || (a != exps_.end() && a->first < b->first)) return a->second > 0 ? 1 : -1;
      if (a == exps_.end() || b->first < a->first) return b->second > 0 ? -1 : 1;
      if (a->second != b->second) return a->second > b->second ? 1 : -1;
      ++a;
      ++b;
    }
    return 0;
  }

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

 private:
  std::vector<std::pair<Var, int>> exps_;
};

// Term order for storage: descending lex, so iteration prints the leading term first.
struct LexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.lex_compare(b) > 0; }
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, LexDescending>;

  Polynomial() = default;
  Polynomial(long c) {
    if (c != 0) terms_.emplace(Monomial(), Rational(c));
  }
  Polynomial(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial(), c);
  }
  Polynomial(const Var& v) { terms_.emplace(Monomial(v), Rational(1)); }
  Polynomial(const Monomial& m, const Rational& c = 1) {
    if (c != 0) terms_.emplace(m, c);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  // A unit of the polynomial ring: a nonzero constant.
  bool is_unit() const { return terms_.size() == 1 && terms_.begin()->first.is_one(); }

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  std::set<Var, std::less<>> variables() const {
    std::set<Var, std::less<>> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.exponents()) out.insert(v);
    return out;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  // Equal up to a global sign.
  bool equal_up_to_sign(const Polynomial& o) const { return *this == o || *this == -o; }

  // Multiplies by -1 if needed so the leading coefficient is positive.
  Polynomial sign_normalized() const {
    if (is_zero() || leading_coefficient() > 0) return *this;
    return -*this;
  }

  // Kills every term containing a variable of `vars`.
  Polynomial substitute_zero(const std::set<Var, std::less<>>& vars) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      bool killed = false;
      for (const auto& [v, e] : m.exponents())
        if (vars.count(v)) {
          killed = true;
          break;
        }
      if (!killed) r.terms_.emplace(m, c);
    }
    return r;
  }

  // Replaces v by the polynomial g. Requires nonnegative exponents of v.
  Polynomial substitute(const Var& v, const Polynomial& g) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      const int e = m.exponent(v);
      if (e < 0) throw std::invalid_argument("substitute: negative exponent");
      Polynomial t(m * Monomial(v, -e), c);
      for (int k = 0; k < e; ++k) t *= g;
      r += t;
    }
    return r;
  }

  // Replaces v by a Laurent monomial (exponents may become negative).
  Polynomial substitute_monomial(const Var& v, const Monomial& image) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      const int e = m.exponent(v);
      Monomial t = m * Monomial(v, -e);
      for (int k = 0; k < e; ++k) t = t * image;
      r.add_term(t, c);
    }
    return r;
  }

  // Multiplies by the smallest monomial making every exponent nonnegative.
  Polynomial clear_denominators() const {
    std::map<Var, int, std::less<>> worst;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.exponents())
        if (e < 0) worst[v] = std::min(worst[v], e);
    Monomial shift;
    for (const auto& [v, e] : worst) shift = shift * Monomial(v, -e);
    return *this * Polynomial(shift);
  }

  // Sum of the terms of minimal weight (min convention). Every variable
  // occurring in the polynomial must be weighted.
  Polynomial initial_form(const std::function<Rational(const Var&)>& weight) const {
    Polynomial r;
    std::optional<Rational> best;
    for (const auto& [m, c] : terms_) {
      Rational w = 0;
      for (const auto& [v, e] : m.exponents()) w += weight(v) * e;
      if (!best || w < *best) {
        best = w;
        r = Polynomial();
      }
      if (w == *best) r.terms_.emplace(m, c);
    }
    return r;
  }
  Polynomial initial_form(const std::map<Var, Rational, std::less<>>& weights) const {
    return initial_form([&](const Var& v) {
      auto it = weights.find(v);
      if (it == weights.end()) throw std::invalid_argument("initial_form: unweighted variable " + default_name(v));
      return it->second;
    });
  }

  std::string to_string(const std::function<std::string(const Var&)>& name = default_name) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const bool neg = c < 0;
      const Rational a = neg ? Rational(-c) : c;
      if (neg)
        out << '-';
      else if (!first)
        out << '+';
      first = false;
      if (m.is_one() || a != 1) {
        if (a.get_den() == 1)
          out << a.get_num();
        else
          out << '(' << a << ')';
      }
      for (const auto& [v, e] : m.exponents()) {
        out << name(v);
        if (e != 1) out << '^' << e;
      }
    }
    return out.str();
  }

 private:
  Terms terms_;
};

// Parses the notation produced by to_string: terms joined by + and -, each an
// optional integer or parenthesized rational coefficient followed by factors
// p<digits>, the letters u..z, or x<i><j>, each with an optional ^exponent.
inline Polynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "0") return Polynomial();
  if (s.empty()) throw std::invalid_argument("parse_polynomial: empty input");
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("parse_polynomial: " + why + " at position " + std::to_string(pos) + " in '" + s + "'");
  };
  auto digits = [&] {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  };
  Polynomial out;
  while (pos < s.size()) {
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (pos != 0) {
      fail("expected + or -");
    }
    Rational coeff = 1;
    if (pos < s.size() && s[pos] == '(') {
      const auto close = s.find(')', pos);
      if (close == std::string::npos) fail("unclosed coefficient");
      coeff = Rational(s.substr(pos + 1, close - pos - 1));
      coeff.canonicalize();
      pos = close + 1;
    } else if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coeff = Rational(digits());
    }
    Monomial m;
    bool any = false;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      Var v;
      const char c = s[pos++];
      if (c == 'p') {
        const auto d = digits();
        if (d.empty()) fail("p without subset");
        v = Var::p(parse_subset(d));
      } else if (c == 'x' && pos + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        v = Var::x(s[pos] - '0', s[pos + 1] - '0');
        pos += 2;
      } else if (c >= 'u' && c <= 'z') {
        static const int ij[6][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
        v = Var::x(ij[c - 'u'][0], ij[c - 'u'][1]);
      } else {
        fail(std::string("unexpected '") + c + "'");
      }
      int e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        const auto d = digits();
        if (d.empty()) fail("missing exponent");
        e = std::stoi(d);
      }
      m = m * Monomial(v, e);
      any = true;
    }
    if (!any && coeff == 1 && pos < s.size()) fail("empty term");
    out.add_term(m, sign * coeff);
  }
  return out;
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// Determinant by cofactor expansion along the first row.
inline Polynomial det_symbolic(const PolyMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("det_symbolic: matrix not square");
  if (n == 0) return Polynomial(1);
  if (n == 1) return m[0][0];
  Polynomial det;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const Polynomial t = m[0][c] * det_symbolic(minor);
    if (c % 2 == 0)
      det += t;
    else
      det -= t;
  }
  return det;
}

// Leibniz-formula determinant, used as an independent check.
inline Polynomial det_leibniz(const PolyMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Polynomial det;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Polynomial t(1);
    for (std::size_t i = 0; i < n && !t.is_zero(); ++i) t *= m[i][perm[i]];
    if (inversions % 2)
      det -= t;
    else
      det += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace flagtrop
