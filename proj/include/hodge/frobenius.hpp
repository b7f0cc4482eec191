#pragma once

#include <cstdint>
#include <string>

#include "hodge/errors.hpp"
#include "hodge/forms.hpp"

namespace hodge {

/// Largest prime accepted by vf_pow_p (p-fold iteration cost).
inline constexpr std::uint64_t kMaxFrobeniusPrime = 101;

template <class From>
VectorField<Fp> mod_reduce(const VectorField<From>& v, std::uint64_t p) {
  VectorField<Fp> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod_reduce(v[i], p);
  return out;
}

inline OneForm<Fp> mod_reduce(const OneForm<Rational>& w, std::uint64_t p) {
  OneForm<Fp> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = mod_reduce(w[i], p);
  return out;
}

/// v applied k times to f.
template <class Scalar>
SparsePoly<Scalar> vf_iterate(const VectorField<Scalar>& v, SparsePoly<Scalar> f, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) f = vf_apply(v, f);
  return f;
}

/// The derivation v^p in characteristic p, assembled from v^p(x_i) = v(...v(x_i)).
inline VectorField<Fp> vf_pow_p(const VectorField<Fp>& v, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  if (p > kMaxFrobeniusPrime)
    throw ResourceLimit("p = " + std::to_string(p) + " exceeds the supported bound " + std::to_string(kMaxFrobeniusPrime));
  const std::size_t n = v.size();
  VectorField<Fp> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    ModPolynomial xi = ModPolynomial::variable(i, n);
    out[i] = vf_iterate(v, map_coefficients<Fp>(xi, [p](const Fp& c) { return Fp(c.value(), p); }), p);
  }
  return out;
}

/// Reduces a rational field mod p first; throws DenominatorDivisibleByP.
inline VectorField<Fp> vf_pow_p(const VectorField<Rational>& v, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  return vf_pow_p(mod_reduce(v, p), p);
}

}  // namespace hodge
