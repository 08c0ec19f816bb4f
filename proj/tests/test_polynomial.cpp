#include <gtest/gtest.h>

#include <random>

#include "flagtrop/polynomial.hpp"

using namespace flagtrop;

namespace {

Polynomial p(const char* digits) { return Polynomial(Var::p(parse_subset(digits))); }
Polynomial x(int i, int j) { return Polynomial(Var::x(i, j)); }

// Upper unitriangular n x n matrix with x_ij above the diagonal.
PolyMatrix full_x(int n) {
  PolyMatrix m(static_cast<std::size_t>(n), std::vector<Polynomial>(static_cast<std::size_t>(n)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) m[i - 1][j - 1] = Polynomial(1);
      if (i < j) m[i - 1][j - 1] = x(i, j);
    }
  return m;
}

PolyMatrix minor(const PolyMatrix& m, int rows, std::vector<int> cols) {
  PolyMatrix out;
  for (int r = 0; r < rows; ++r) {
    std::vector<Polynomial> row;
    for (int c : cols) row.push_back(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c - 1)]);
    out.push_back(row);
  }
  return out;
}

std::map<Var, Rational, std::less<>> weights_e(const std::vector<std::pair<const char*, long>>& w,
                                               const std::vector<const char*>& all) {
  std::map<Var, Rational, std::less<>> out;
  for (const char* s : all) out[Var::p(parse_subset(s))] = 0;
  for (const auto& [s, c] : w) out[Var::p(parse_subset(s))] = c;
  return out;
}

}  // namespace

TEST(Printing, MatchesConventionalShorthand) {
  EXPECT_EQ((x(1, 2) * x(2, 4) - x(1, 4)).to_string(), "uy-w");
  EXPECT_EQ((x(1, 2) * x(2, 3) * x(3, 4) - x(1, 2) * x(2, 4) - x(1, 3) * x(3, 4) + x(1, 4)).to_string(),
            "uxz-uy-vz+w");
  EXPECT_EQ((p("1") * p("23") - p("2") * p("13") + p("3") * p("12")).to_string(), "p1p23-p2p13+p3p12");
  EXPECT_EQ(Polynomial().to_string(), "0");
  EXPECT_EQ((Polynomial(Rational(-1, 2)) * x(1, 2) * x(1, 2)).to_string(), "-(1/2)u^2");
}

TEST(Arithmetic, CancellationAndCanonicalTerms) {
  const Polynomial f = x(1, 2) + x(1, 3);
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ(f * f, x(1, 2) * x(1, 2) + Polynomial(2) * x(1, 2) * x(1, 3) + x(1, 3) * x(1, 3));
  EXPECT_EQ((f * f).size(), 3u);
}

TEST(Determinant, OneByOneAndUnitriangular) {
  EXPECT_EQ(det_symbolic({{x(1, 2)}}), x(1, 2));
  const auto X = full_x(4);
  for (int r = 1; r <= 4; ++r) {
    std::vector<int> cols;
    for (int c = 1; c <= r; ++c) cols.push_back(c);
    EXPECT_EQ(det_symbolic(minor(X, r, cols)), Polynomial(1));
  }
}

TEST(Determinant, AgreesWithLeibnizUpToFour) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coin(0, 3), small(-2, 2);
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      PolyMatrix m(static_cast<std::size_t>(n), std::vector<Polynomial>(static_cast<std::size_t>(n)));
      for (auto& row : m)
        for (auto& e : row) {
          e = Polynomial(small(rng));
          if (coin(rng) == 0) e += x(1 + coin(rng) % 3, 4);
        }
      EXPECT_EQ(det_symbolic(m), det_leibniz(m));
    }
}

TEST(Determinant, TopMinorsOfFullMatrix) {
  const auto X = full_x(4);
  EXPECT_EQ(det_symbolic(minor(X, 2, {2, 3})), x(1, 2) * x(2, 3) - x(1, 3));
  EXPECT_EQ(det_symbolic(minor(X, 3, {2, 3, 4})).to_string(), "uxz-uy-vz+w");
}

TEST(SubstituteZero, KillsTerms) {
  const Polynomial f = x(1, 2) + x(1, 3);
  EXPECT_EQ(f.substitute_zero({Var::x(1, 3)}), x(1, 2));
  EXPECT_EQ(f.substitute_zero({}), f);
}

TEST(SubstituteZero, ReducedMinorIsSingleVariable) {
  // x13, x23, x24 set to zero: X_{234} collapses to x14
  const auto X = full_x(4);
  const Polynomial d = det_symbolic(minor(X, 3, {2, 3, 4}));
  EXPECT_EQ(d.substitute_zero({Var::x(1, 3), Var::x(2, 3), Var::x(2, 4)}), x(1, 4));
}

TEST(InitialForm, MinimumWeightTerms) {
  const Polynomial f = p("1") * p("23") - p("2") * p("13") + p("3") * p("12");
  const std::vector<const char*> n3 = {"1", "2", "3", "12", "13", "23"};
  EXPECT_EQ(f.initial_form(weights_e({{"1", 1}}, n3)), -p("2") * p("13") + p("3") * p("12"));
  EXPECT_EQ(f.initial_form(weights_e({}, n3)), f);

  const Polynomial g = p("12") * p("34") - p("13") * p("24") + p("14") * p("23");
  const std::vector<const char*> n4 = {"12", "13", "14", "23", "24", "34"};
  EXPECT_EQ(g.initial_form(weights_e({{"12", 1}, {"34", 1}}, n4)), -p("13") * p("24") + p("14") * p("23"));
}

TEST(InitialForm, IdempotentAndBlockShiftInvariant) {
  const Polynomial f = p("1") * p("234") - p("2") * p("134") + p("3") * p("124") - p("4") * p("123");
  const std::vector<const char*> all = {"1", "2", "3", "4", "123", "124", "134", "234"};
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<Var, Rational, std::less<>> w;
    for (const char* s : all) w[Var::p(parse_subset(s))] = d(rng);
    const Polynomial in = f.initial_form(w);
    EXPECT_EQ(in.initial_form(w), in);
    auto shifted = w;
    const long c1 = d(rng), c3 = d(rng);
    for (auto& [v, x] : shifted) x += cardinality(v.subset) == 1 ? c1 : c3;
    EXPECT_EQ(f.initial_form(shifted), in);
  }
}

TEST(InitialForm, RejectsUnweightedVariables) {
  const Polynomial f = p("1") + p("2");
  EXPECT_THROW(f.initial_form(weights_e({}, {"1"})), std::invalid_argument);
}

TEST(Substitute, PolynomialAndLaurent) {
  const Polynomial f = x(1, 2) * x(2, 4) - x(1, 4);
  EXPECT_TRUE(f.substitute(Var::x(1, 4), x(1, 2) * x(2, 4)).is_zero());
  // x24 -> p14 / p1, x12 -> p2 / p1 (no p-empty factor), x14 -> p4
  Polynomial g = f.substitute_monomial(Var::x(2, 4), Monomial(Var::p(parse_subset("14"))) *
                                                         Monomial(Var::p(parse_subset("1")), -1));
  g = g.substitute_monomial(Var::x(1, 2), Monomial(Var::p(parse_subset("2"))));
  g = g.substitute_monomial(Var::x(1, 4), Monomial(Var::p(parse_subset("4"))));
  EXPECT_EQ(g.clear_denominators(), p("2") * p("14") - p("1") * p("4"));
}

TEST(SignNormalization, LeadingCoefficientPositive) {
  const Polynomial f = x(1, 4) - x(1, 2) * x(2, 4);
  EXPECT_EQ(f.sign_normalized().to_string(), "uy-w");
  EXPECT_TRUE(f.equal_up_to_sign(x(1, 2) * x(2, 4) - x(1, 4)));
}

TEST(Parse, RoundTripsPrintedForms) {
  for (const char* s : {"uy-w", "uxz-uy-vz+w", "p1p23-p2p13+p3p12", "-(1/2)u^2", "p1p234-p2p134+p3p124-p4p123", "0",
                        "w+3x15x25"}) {
    EXPECT_EQ(parse_polynomial(s).to_string(), s);
  }
  EXPECT_EQ(parse_polynomial("w - vz - uy"), x(1, 4) - x(1, 3) * x(3, 4) - x(1, 2) * x(2, 4));
  EXPECT_THROW(parse_polynomial("p1*p2"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial(""), std::invalid_argument);
}
