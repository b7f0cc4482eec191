#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "hodge/modp.hpp"
#include "hodge/rational.hpp"

namespace hodge {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = MatrixX<Rational>;
using VectorQ = VectorX<Rational>;

/// Reduced row echelon form together with its pivot columns.
template <class Scalar>
struct Echelon {
  MatrixX<Scalar> reduced;
  std::vector<Eigen::Index> pivots;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

namespace detail {

// Gauss-Jordan over an exact field.
template <class Scalar>
Echelon<Scalar> field_rref(MatrixX<Scalar> a) {
  Echelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    a.row(piv).swap(a.row(row));
    const Scalar inv = Scalar(1) / a(row, col);
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Scalar f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

// Fraction-free Gauss-Jordan (Bareiss) on an integer matrix. Every entry stays
// a minor of the input, so the divisions by the previous pivot are exact.
// On return all pivot entries equal the last pivot value.
inline std::vector<Eigen::Index> bareiss_gauss_jordan(std::vector<std::vector<Integer>>& a, std::size_t cols) {
  std::vector<Eigen::Index> pivots;
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const Integer p = a[row][col];
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row) continue;
      const Integer f = a[i][col];
      for (std::size_t j = 0; j < cols; ++j) {
        Integer v = p * a[i][j] - f * a[row][j];
        if (prev != 1) {
          if (!mpz_divisible_p(v.get_mpz_t(), prev.get_mpz_t()))
            throw std::logic_error("fraction-free elimination: inexact division");
          mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        }
        a[i][j] = std::move(v);
      }
    }
    prev = p;
    pivots.push_back(static_cast<Eigen::Index>(col));
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Reduced row echelon form over an exact field.
template <class Scalar>
Echelon<Scalar> rref(const MatrixX<Scalar>& m) {
  return detail::field_rref<Scalar>(m);
}

/// Rational matrices are reduced fraction-free: rows are scaled to integers,
/// eliminated with Bareiss steps, and only the final pivot rows are divided.
template <>
inline Echelon<Rational> rref<Rational>(const MatrixQ& m) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Integer den = 1;
    for (std::size_t j = 0; j < cols; ++j) den = lcm(den, m(i, j).denominator());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).numerator() * (den / m(i, j).denominator());
  }
  Echelon<Rational> out;
  out.pivots = detail::bareiss_gauss_jordan(a, cols);
  out.reduced = MatrixQ::Zero(m.rows(), m.cols());
  for (std::size_t r = 0; r < out.pivots.size(); ++r) {
    const Integer& p = a[r][static_cast<std::size_t>(out.pivots[r])];
    for (std::size_t j = 0; j < cols; ++j)
      if (a[r][j] != 0) out.reduced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = Rational(a[r][j], p);
  }
  return out;
}

template <class Scalar>
Eigen::Index rank(const MatrixX<Scalar>& m) {
  return rref<Scalar>(m).rank();
}

/// Basis of the right kernel, one vector per free column (that entry is 1).
template <class Scalar>
std::vector<VectorX<Scalar>> nullspace(const MatrixX<Scalar>& m) {
  const Echelon<Scalar> e = rref<Scalar>(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<VectorX<Scalar>> basis;
  for (Eigen::Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    VectorX<Scalar> v = VectorX<Scalar>::Constant(m.cols(), Scalar(0));
    v(f) = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v(e.pivots[r]) = -e.reduced(static_cast<Eigen::Index>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Rational kernel basis via fraction-free elimination.
inline std::vector<VectorQ> nullspace_rational(const MatrixQ& m) { return nullspace<Rational>(m); }

/// Is `b` in the column span of `a`?
template <class Scalar>
bool solvable(const MatrixX<Scalar>& a, const VectorX<Scalar>& b) {
  MatrixX<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  return rank<Scalar>(aug) == rank<Scalar>(a);
}

/// Determinant by cofactor expansion along the first row. Works over any
/// commutative ring scalar (polynomials included); intended for small sizes.
template <class Derived>
typename Derived::Scalar determinant_expand(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return S(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  S acc(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (m(0, j) == S(0)) continue;
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    S term = m(0, j) * determinant_expand(minor);
    if (j % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

}  // namespace hodge
