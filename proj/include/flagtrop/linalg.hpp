#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace flagtrop {

using Rational = mpq_class;
using Integer = mpz_class;

template <class T>
using Vec = std::vector<T>;

// Dense row-major matrix over an exact ring (Rational or Integer).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      for (long x : row) data_.emplace_back(x);
    }
  }

  static Matrix from_rows(const std::vector<Vec<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_rows(const std::vector<Vec<T>>& rows) {
    return from_rows(rows, rows.empty() ? 0 : rows.front().size());
  }
  static Matrix from_columns(const std::vector<Vec<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("Matrix::from_columns: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<T> row(std::size_t i) const { return Vec<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vec<T> column(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
    Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += (*this)(i, k) * o(k, j);
      }
    return p;
  }

  // Stack `below` under this matrix (column counts must agree).
  Matrix vstack(const Matrix& below) const {
    if (rows_ == 0) return below;
    if (below.rows_ == 0) return *this;
    if (cols_ != below.cols_) throw std::invalid_argument("Matrix::vstack: column mismatch");
    Matrix m(rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return m;
  }

  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

inline RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

template <class T>
Vec<Rational> to_rational(const Vec<T>& v) {
  Vec<Rational> r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

// Reduced row echelon form together with the pivot column of each nonzero row.
struct Echelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

inline Echelon rref(RationalMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }
inline std::size_t rank(const IntegerMatrix& m) { return rank(to_rational(m)); }

// Basis of the right kernel, returned as the rows of a matrix in reduced row
// echelon form. Empty iff the matrix has full column rank.
inline std::vector<Vec<Rational>> kernel_basis(const RationalMatrix& m) {
  const auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<Rational> v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red(i, f);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  auto normal = rref(RationalMatrix::from_rows(basis, m.cols()));
  std::vector<Vec<Rational>> out;
  for (std::size_t i = 0; i < normal.pivots.size(); ++i) out.push_back(normal.reduced.row(i));
  return out;
}
inline std::vector<Vec<Rational>> kernel_basis(const IntegerMatrix& m) { return kernel_basis(to_rational(m)); }

// Solves m x = b. Returns the particular solution with free variables set to
// zero, or nothing when the system is inconsistent.
inline std::optional<Vec<Rational>> solve(const RationalMatrix& m, const Vec<Rational>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto [red, pivots] = rref(aug);
  Vec<Rational> x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;
    x[pivots[i]] = red(i, m.cols());
  }
  return x;
}

inline Rational determinant(RationalMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

// Integer determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntegerMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Smith normal form U * A * V = D with U, V unimodular and D diagonal with
// nonnegative invariant factors d_1 | d_2 | ... .
struct SmithForm {
  IntegerMatrix d;
  IntegerMatrix u;
  IntegerMatrix v;
  std::size_t rank = 0;

  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> f;
    for (std::size_t i = 0; i < rank; ++i) f.push_back(d(i, i));
    return f;
  }
};

namespace detail {

inline void add_row_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
inline void add_col_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}
inline void negate_row(IntegerMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace detail

inline SmithForm smith_normal_form(const IntegerMatrix& a) {
  SmithForm s{a, IntegerMatrix::identity(a.rows()), IntegerMatrix::identity(a.cols()), 0};
  IntegerMatrix& d = s.d;
  const std::size_t rows = d.rows(), cols = d.cols();
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot on the entry of minimal absolute value in the trailing block
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    d.swap_rows(t, pi);
    s.u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    s.v.swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        detail::add_row_multiple(d, i, t, -q);
        detail::add_row_multiple(s.u, i, t, -q);
        if (d(i, t) != 0) {
          d.swap_rows(t, i);
          s.u.swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        detail::add_col_multiple(d, j, t, -q);
        detail::add_col_multiple(s.v, j, t, -q);
        if (d(t, j) != 0) {
          d.swap_cols(t, j);
          s.v.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: every trailing entry must be a multiple of the pivot
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            detail::add_row_multiple(d, t, i, Integer(1));
            detail::add_row_multiple(s.u, t, i, Integer(1));
            clean = false;
            break;
          }
    }
    if (d(t, t) < 0) {
      detail::negate_row(d, t);
      detail::negate_row(s.u, t);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

// Inverse of a unimodular integer matrix.
inline IntegerMatrix unimodular_inverse(const IntegerMatrix& u) {
  const auto inv = rref([&] {
    RationalMatrix aug(u.rows(), 2 * u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i)
      for (std::size_t j = 0; j < u.cols(); ++j) {
        aug(i, j) = Rational(u(i, j));
        aug(i, u.cols() + j) = i == j ? 1 : 0;
      }
    return aug;
  }());
  IntegerMatrix out(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) {
      const Rational& x = inv.reduced(i, u.cols() + j);
      if (x.get_den() != 1) throw std::invalid_argument("unimodular_inverse: matrix is not unimodular");
      out(i, j) = x.get_num();
    }
  return out;
}

// Row-style Hermite normal form of the lattice spanned by `rows`: echelon,
// positive pivots, entries above each pivot reduced into [0, pivot). Zero
// rows are dropped, so the result is a canonical basis.
inline std::vector<Vec<Integer>> hermite_basis(std::vector<Vec<Integer>> rows, std::size_t dim) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    while (true) {
      std::size_t p = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (p == rows.size() || abs(rows[i][c]) < abs(rows[p][c]))) p = i;
      if (p == rows.size()) break;
      std::swap(rows[r], rows[p]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

// A saturated sublattice of Z^ambient, stored by its Hermite basis.
class IntegerLattice {
 public:
  IntegerLattice() = default;
  IntegerLattice(std::size_t ambient, std::vector<Vec<Integer>> generators)
      : ambient_(ambient), basis_(hermite_basis(std::move(generators), ambient)) {}

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<Vec<Integer>>& basis() const { return basis_; }

  // Membership of an integer vector; valid because the lattice is saturated.
  bool contains(const Vec<Integer>& x) const {
    if (x.size() != ambient_) return false;
    auto rows = basis_;
    rows.push_back(x);
    return hermite_basis(std::move(rows), ambient_) == basis_;
  }

  bool is_saturated() const {
    if (basis_.empty()) return true;
    const auto f = smith_normal_form(IntegerMatrix::from_rows(basis_, ambient_)).invariant_factors();
    return std::all_of(f.begin(), f.end(), [](const Integer& x) { return x == 1; });
  }

  bool operator==(const IntegerLattice& o) const = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec<Integer>> basis_;
};

// Saturation of the column span of m inside Z^rows, via Smith normal form:
// if U m V = D then the saturation is spanned by the first rank(m) columns of U^{-1}.
inline IntegerLattice saturate_image(const IntegerMatrix& m) {
  const auto s = smith_normal_form(m);
  const auto uinv = unimodular_inverse(s.u);
  std::vector<Vec<Integer>> gens;
  for (std::size_t j = 0; j < s.rank; ++j) gens.push_back(uinv.column(j));
  return IntegerLattice(m.rows(), std::move(gens));
}

// Surjection Z^ambient -> Z^(ambient - rank) whose kernel is exactly the
// (saturated) lattice, returned as an integer matrix.
inline IntegerMatrix quotient_map(const IntegerLattice& lattice) {
  const std::size_t n = lattice.ambient_rank();
  if (lattice.rank() == 0) return IntegerMatrix::identity(n);
  const auto s = smith_normal_form(IntegerMatrix::from_columns(lattice.basis(), n));
  IntegerMatrix q(n - s.rank, n);
  for (std::size_t i = s.rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i - s.rank, j) = s.u(i, j);
  return q;
}

// Scales a rational vector to the primitive integer vector on the same ray.
inline Vec<Integer> primitive(const Vec<Rational>& v) {
  Integer lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  Vec<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer y = x.get_num() * (lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_mpz_t());
    out.push_back(std::move(y));
  }
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

template <class A, class B>
Rational dot(const Vec<A>& a, const Vec<B>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * Rational(b[i]);
  return s;
}

}  // namespace flagtrop
