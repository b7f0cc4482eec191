#pragma once

#include <random>

#include "hodge/forms.hpp"
#include "support.hpp"

namespace hodge::testing {

inline PolyMatrix<Rational> identity(Eigen::Index h, std::size_t nvars) {
  PolyMatrix<Rational> m = PolyMatrix<Rational>::Constant(h, h, Polynomial::zero(nvars));
  for (Eigen::Index i = 0; i < h; ++i) m(i, i) = Polynomial(Rational(1), nvars);
  return m;
}

/// Inverse of I + N for nilpotent N: sum_k (-N)^k.
inline PolyMatrix<Rational> unipotent_inverse(const PolyMatrix<Rational>& y, std::size_t nvars) {
  const Eigen::Index h = y.rows();
  const PolyMatrix<Rational> id = identity(h, nvars);
  const PolyMatrix<Rational> neg = id - y;
  PolyMatrix<Rational> term = id, acc = id;
  for (Eigen::Index k = 1; k < h; ++k) {
    term = PolyMatrix<Rational>(term * neg);
    acc += term;
  }
  return acc;
}

/// Upper unipotent h x h matrix with random polynomial entries above the diagonal.
inline PolyMatrix<Rational> random_upper_unipotent(std::mt19937& rng, Eigen::Index h, std::size_t nvars, int max_deg,
                                                   bool with_constants = true) {
  PolyMatrix<Rational> y = identity(h, nvars);
  for (Eigen::Index i = 0; i < h; ++i)
    for (Eigen::Index j = i + 1; j < h; ++j) {
      Polynomial p = random_poly(rng, nvars, max_deg, 3);
      if (!with_constants) p -= Polynomial(p.constant_term(), nvars);
      y(i, j) = p;
    }
  return y;
}

/// B = dY Y^{-1}.
inline FormMatrix<Rational> log_derivative(const PolyMatrix<Rational>& y, const PolyMatrix<Rational>& y_inv,
                                           std::size_t nvars) {
  return d_matrix<Rational>(y, nvars) * y_inv;
}

/// Integrable connection respecting transversality for Hodge blocks (1,2,1):
/// Y = U L with U upper unipotent whose last column is e_3 and L lower unipotent.
inline FormMatrix<Rational> random_transversal_connection(std::mt19937& rng, std::size_t nvars, int max_deg) {
  PolyMatrix<Rational> u = random_upper_unipotent(rng, 4, nvars, max_deg);
  for (Eigen::Index i = 0; i < 3; ++i) u(i, 3) = Polynomial::zero(nvars);
  PolyMatrix<Rational> l = PolyMatrix<Rational>(random_upper_unipotent(rng, 4, nvars, max_deg).transpose());
  const PolyMatrix<Rational> y = u * l;
  const PolyMatrix<Rational> y_inv = unipotent_inverse(l, nvars) * unipotent_inverse(u, nvars);
  return log_derivative(y, y_inv, nvars);
}

}  // namespace hodge::testing
