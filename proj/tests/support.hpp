#pragma once

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hodge/expr.hpp"
#include "hodge/forms.hpp"

namespace hodge {

/// Test diagnostics print polynomials over z0, z1, ...
template <class Scalar>
std::ostream& operator<<(std::ostream& os, const SparsePoly<Scalar>& p) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.nvars(); ++i) names.push_back("z" + std::to_string(i));
  return os << print_polynomial(p, PolyContext(names, names));
}

}  // namespace hodge

namespace hodge::testing {

inline Rational random_rational(std::mt19937& rng, int range = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-range, range), den(1, max_den);
  return Rational(Integer(num(rng)), Integer(den(rng)));
}

/// Random polynomial with up to `terms` terms of total degree <= max_deg.
inline Polynomial random_poly(std::mt19937& rng, std::size_t nvars, int max_deg, int terms = 4,
                              std::optional<int> truncation = std::nullopt) {
  Polynomial p = Polynomial::zero(nvars, truncation);
  std::uniform_int_distribution<int> e(0, max_deg);
  std::uniform_int_distribution<std::size_t> v(0, nvars - 1);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> ex(nvars, 0);
    const int deg = e(rng);
    for (int k = 0; k < deg; ++k) ++ex[v(rng)];
    p.add_term(Monomial(ex), random_rational(rng));
  }
  return p;
}

inline VectorField<Rational> random_field(std::mt19937& rng, std::size_t nvars, int max_deg) {
  VectorField<Rational> v(nvars);
  for (std::size_t i = 0; i < nvars; ++i) v[i] = random_poly(rng, nvars, max_deg, 3);
  return v;
}

inline OneForm<Rational> random_oneform(std::mt19937& rng, std::size_t nvars, int max_deg) {
  OneForm<Rational> w(nvars);
  for (std::size_t i = 0; i < nvars; ++i) w[i] = random_poly(rng, nvars, max_deg, 3);
  return w;
}

}  // namespace hodge::testing
