#pragma once

#include <cstddef>
#include <vector>

#include "hodge/errors.hpp"
#include "hodge/forms.hpp"

namespace hodge {

/// Fundamental solution of dY = B Y with Y(0) = I, as series of total degree <= order.
///
/// Uses the radial recursion n Y_n = sum_k z_k sum_j (B_k)_j Y_{n-1-j}
/// (Euler's identity on homogeneous parts), which yields the unique solution
/// whenever B is integrable. Integrability is checked on the truncated input
/// before solving and the result is verified against dY = B Y afterwards; either
/// failure raises NotIntegrable. The expansion point must be regular: no
/// Laurent terms.
inline PolyMatrix<Rational> linear_solve_series(const FormMatrix<Rational>& b, int order) {
  if (b.rows() != b.cols()) throw InvalidInput("linear_solve_series needs a square connection matrix");
  if (order < 0) throw InvalidInput("negative truncation order");
  const std::size_t nv = b.nvars();
  const Eigen::Index h = b.rows();

  int input_order = order;  // highest degree of B that is trusted
  for (const auto& part : b.parts)
    for (Eigen::Index i = 0; i < part.size(); ++i) {
      const auto& p = part.data()[i];
      if (p.has_laurent_terms()) throw InvalidInput("connection has a pole at the expansion point");
      if (p.truncation()) input_order = std::min(input_order, *p.truncation());
    }

  // Truncated integrability: dB - B^B has no terms of degree <= min(order-2, input_order-1).
  const int check_degree = std::min(order - 2, input_order - 1);
  if (check_degree >= 0) {
    FormMatrix<Rational> bt;
    for (const auto& part : b.parts) bt.parts.push_back(truncated<Rational>(part, check_degree + 1));
    const auto db = d_matrix(bt);
    const auto bb = wedge(bt, bt);
    TwoFormMatrix<Rational> defect = db;
    for (const auto& [key, m] : bb.parts) defect.add(key.first, key.second, PolyMatrix<Rational>(-m));
    for (const auto& [key, m] : defect.parts)
      if (!all_zero<Rational>(truncated<Rational>(m, check_degree)))
        throw NotIntegrable("connection matrix fails dB = B ^ B below the requested order");
  }

  // Homogeneous parts of each B_k.
  std::vector<std::vector<PolyMatrix<Rational>>> bk(nv);
  for (std::size_t k = 0; k < nv; ++k)
    for (int j = 0; j < order; ++j)
      bk[k].push_back(b.parts[k].unaryExpr([j](const Polynomial& p) { return p.homogeneous_part(j).as_polynomial(); }));

  std::vector<PolyMatrix<Rational>> y;
  y.push_back(PolyMatrix<Rational>::Identity(h, h));
  for (int n = 1; n <= order; ++n) {
    PolyMatrix<Rational> yn = PolyMatrix<Rational>::Constant(h, h, 0);
    for (std::size_t k = 0; k < nv; ++k) {
      PolyMatrix<Rational> acc = PolyMatrix<Rational>::Constant(h, h, 0);
      for (int j = 0; j < n; ++j) acc += bk[k][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(n - 1 - j)];
      yn += acc * Polynomial::variable(k, nv);
    }
    y.push_back(yn * Polynomial(Rational(1) / Rational(n)));
  }

  PolyMatrix<Rational> out = PolyMatrix<Rational>::Constant(h, h, Polynomial::zero(nv, order));
  for (const auto& yn : y) out += yn;
  for (Eigen::Index i = 0; i < out.size(); ++i) out.data()[i].set_nvars(nv);

  // dY - B Y must vanish through degree order-1.
  const int verify_degree = std::min(order - 1, input_order);
  if (verify_degree >= 0)
    for (std::size_t k = 0; k < nv; ++k) {
      PolyMatrix<Rational> lhs = diff<Rational>(out, k);
      PolyMatrix<Rational> rhs = b.parts[k] * out;
      if (!all_zero<Rational>(truncated<Rational>(PolyMatrix<Rational>(lhs - rhs), verify_degree)))
        throw NotIntegrable("no consistent series solution: dY = B Y fails");
    }
  return out;
}

}  // namespace hodge
