#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hodge/errors.hpp"
#include "hodge/forms.hpp"
#include "hodge/frobenius.hpp"
#include "hodge/linalg.hpp"

namespace hodge {

/// Outcome of a degree-bounded search: a certificate was found, or none exists
/// within the bound (which proves nothing).
enum class Verdict { Yes, Unknown };

inline const char* to_string(Verdict v) { return v == Verdict::Yes ? "YES" : "UNKNOWN"; }

/// Finite generating set of an ideal. No generators means the zero ideal.
template <class Scalar>
struct IdealGens {
  std::vector<SparsePoly<Scalar>> generators;

  bool is_zero_ideal() const {
    return std::all_of(generators.begin(), generators.end(), [](const auto& g) { return g.is_zero(); });
  }
};

inline IdealGens<Fp> mod_reduce(const IdealGens<Rational>& ideal, std::uint64_t p) {
  IdealGens<Fp> out;
  for (const auto& g : ideal.generators) out.generators.push_back(mod_reduce(g, p));
  return out;
}

namespace detail {

template <class Scalar>
std::size_t arity(std::span<const SparsePoly<Scalar>> polys) {
  std::size_t n = 0;
  for (const auto& p : polys) {
    n = std::max(n, p.nvars());
    for (const auto& [m, c] : p.terms()) n = std::max(n, m.support_size());
  }
  return n;
}

struct MonomialPairLess {
  bool operator()(const std::pair<std::size_t, Monomial>& a, const std::pair<std::size_t, Monomial>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return GradedLex{}(a.second, b.second);
  }
};

// Sparse column vector: (block, monomial) -> coefficient.
template <class Scalar>
using SparseColumn = std::vector<std::pair<std::pair<std::size_t, Monomial>, Scalar>>;

template <class Scalar>
MatrixX<Scalar> assemble(const std::vector<SparseColumn<Scalar>>& cols,
                         std::map<std::pair<std::size_t, Monomial>, Eigen::Index, MonomialPairLess>& rows) {
  for (const auto& col : cols)
    for (const auto& [key, c] : col) rows.try_emplace(key, 0);
  Eigen::Index r = 0;
  for (auto& [key, idx] : rows) idx = r++;
  MatrixX<Scalar> a = MatrixX<Scalar>::Constant(r, static_cast<Eigen::Index>(cols.size()), Scalar(0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [key, c] : cols[j]) a(rows.at(key), static_cast<Eigen::Index>(j)) += c;
  return a;
}

template <class Scalar>
void append(SparseColumn<Scalar>& col, std::size_t block, const SparsePoly<Scalar>& p, const Monomial& shift,
            bool negate = false) {
  for (const auto& [m, c] : p.terms()) col.emplace_back(std::pair{block, m * shift}, negate ? -c : c);
}

}  // namespace detail

/// Largest total degree among the given polynomials (0 when all vanish).
template <class Scalar>
int max_degree(std::span<const SparsePoly<Scalar>> polys) {
  int d = 0;
  for (const auto& p : polys) d = std::max(d, p.total_degree());
  return d;
}

/// Default search bound: twice the largest generator degree.
template <class Scalar>
int default_degree_bound(const IdealGens<Scalar>& ideal) {
  return std::max(1, 2 * max_degree<Scalar>(ideal.generators));
}

/// YES iff f = sum_i c_i g_i for cofactors of total degree <= deg.
template <class Scalar>
Verdict ideal_membership_bounded(const SparsePoly<Scalar>& f, const IdealGens<Scalar>& ideal, int deg) {
  if (f.is_zero()) return Verdict::Yes;
  if (ideal.is_zero_ideal() || deg < 0) return Verdict::Unknown;
  std::vector<SparsePoly<Scalar>> all = ideal.generators;
  all.push_back(f);
  const std::size_t n = detail::arity<Scalar>(all);
  const auto cofactors = monomials_up_to(n, deg);

  std::vector<detail::SparseColumn<Scalar>> cols;
  for (const auto& g : ideal.generators) {
    if (g.is_zero()) continue;
    for (const auto& mu : cofactors) {
      cols.emplace_back();
      detail::append(cols.back(), 0, g, mu);
    }
  }
  detail::SparseColumn<Scalar> rhs;
  detail::append(rhs, 0, f, Monomial{});
  cols.push_back(rhs);

  std::map<std::pair<std::size_t, Monomial>, Eigen::Index, detail::MonomialPairLess> rows;
  const MatrixX<Scalar> aug = detail::assemble(cols, rows);
  const MatrixX<Scalar> a = aug.leftCols(aug.cols() - 1);
  return rank<Scalar>(aug) == rank<Scalar>(a) ? Verdict::Yes : Verdict::Unknown;
}

/// Generators of Sch(v in span(ws)): all (a+1)-minors of the coefficient matrix
/// with rows v, w_1..w_a. Zero minors are dropped; an empty result is the zero ideal.
template <class Scalar>
IdealGens<Scalar> sch_ideal(const VectorField<Scalar>& v, const std::vector<VectorField<Scalar>>& ws) {
  if (ws.empty()) throw InvalidInput("Sch(v in Theta) needs at least one generator w");
  const std::size_t n = v.size();
  for (const auto& w : ws) detail::require_same_size(w.size(), n);
  const std::size_t k = ws.size() + 1;
  IdealGens<Scalar> out;
  if (k > n) return out;

  PolyMatrix<Scalar> rows(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
  rows.row(0) = v.coeffs.transpose();
  for (std::size_t r = 0; r < ws.size(); ++r) rows.row(static_cast<Eigen::Index>(r + 1)) = ws[r].coeffs.transpose();

  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = i;
  while (true) {
    PolyMatrix<Scalar> minor(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) minor.col(static_cast<Eigen::Index>(j)) = rows.col(static_cast<Eigen::Index>(cols[j]));
    SparsePoly<Scalar> det = determinant_expand(minor);
    if (!det.is_zero() && std::find(out.generators.begin(), out.generators.end(), det) == out.generators.end())
      out.generators.push_back(std::move(det));
    // Next k-combination of {0..n-1} in lexicographic order.
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
  return out;
}

/// Does every generator of sch_ideal(v, ws) vanish at t?
template <class Scalar>
bool sch_contains_point(const VectorField<Scalar>& v, const std::vector<VectorField<Scalar>>& ws,
                        std::span<const Scalar> t) {
  const auto ideal = sch_ideal(v, ws);
  return std::all_of(ideal.generators.begin(), ideal.generators.end(),
                     [&](const auto& g) { return evaluate(g, t).is_zero(); });
}

/// Basis of the fields with component degrees <= deg annihilating every generator.
template <class Scalar>
std::vector<VectorField<Scalar>> dual_theta_bounded(const std::vector<OneForm<Scalar>>& omega, int deg) {
  if (omega.empty()) throw InvalidInput("dual of an empty set of forms needs an explicit ring");
  const std::size_t n = omega.front().size();
  for (const auto& w : omega) detail::require_same_size(w.size(), n);
  const auto monos = monomials_up_to(n, deg);

  std::vector<detail::SparseColumn<Scalar>> cols;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& m : monos) {
      cols.emplace_back();
      for (std::size_t g = 0; g < omega.size(); ++g) detail::append(cols.back(), g, omega[g][i], m);
    }
  std::map<std::pair<std::size_t, Monomial>, Eigen::Index, detail::MonomialPairLess> rows;
  const MatrixX<Scalar> a = detail::assemble(cols, rows);

  std::vector<VectorField<Scalar>> out;
  for (const auto& kv : nullspace<Scalar>(a)) {
    VectorField<Scalar> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i].set_nvars(n);
      for (std::size_t j = 0; j < monos.size(); ++j) v[i].add_term(monos[j], kv(static_cast<Eigen::Index>(i * monos.size() + j)));
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Fields with component degrees <= deg such that every w(v) lies in the ideal
/// with cofactors of degree <= cofactor_deg: a bounded slice of the module of
/// fields tangent to the zero set of `ideal`. Returned as a basis.
template <class Scalar>
std::vector<VectorField<Scalar>> tangent_fields_bounded(const std::vector<OneForm<Scalar>>& omega,
                                                         const IdealGens<Scalar>& ideal, int deg, int cofactor_deg) {
  if (omega.empty()) throw InvalidInput("dual of an empty set of forms needs an explicit ring");
  const std::size_t n = omega.front().size();
  for (const auto& w : omega) detail::require_same_size(w.size(), n);
  const auto monos = monomials_up_to(n, deg);
  const auto cofactors = monomials_up_to(n, cofactor_deg);

  std::vector<detail::SparseColumn<Scalar>> cols;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& m : monos) {
      cols.emplace_back();
      for (std::size_t g = 0; g < omega.size(); ++g) detail::append(cols.back(), g, omega[g][i], m);
    }
  const std::size_t field_unknowns = cols.size();
  if (!ideal.is_zero_ideal())
    for (std::size_t g = 0; g < omega.size(); ++g)
      for (const auto& gen : ideal.generators)
        for (const auto& mu : cofactors) {
          cols.emplace_back();
          detail::append(cols.back(), g, gen, mu, /*negate=*/true);
        }
  std::map<std::pair<std::size_t, Monomial>, Eigen::Index, detail::MonomialPairLess> rows;
  const MatrixX<Scalar> a = detail::assemble(cols, rows);

  const auto kernel = nullspace<Scalar>(a);
  if (kernel.empty()) return {};
  // Project onto the field unknowns and extract a basis of the projection.
  MatrixX<Scalar> proj(static_cast<Eigen::Index>(kernel.size()), static_cast<Eigen::Index>(field_unknowns));
  for (std::size_t r = 0; r < kernel.size(); ++r)
    proj.row(static_cast<Eigen::Index>(r)) = kernel[r].head(static_cast<Eigen::Index>(field_unknowns)).transpose();
  const Echelon<Scalar> e = rref<Scalar>(proj);

  std::vector<VectorField<Scalar>> out;
  for (Eigen::Index r = 0; r < e.rank(); ++r) {
    VectorField<Scalar> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i].set_nvars(n);
      for (std::size_t j = 0; j < monos.size(); ++j)
        v[i].add_term(monos[j], e.reduced(r, static_cast<Eigen::Index>(i * monos.size() + j)));
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Is `v` in the span (over the coefficient field) of `basis`?
template <class Scalar>
bool in_span(const VectorField<Scalar>& v, const std::vector<VectorField<Scalar>>& basis) {
  std::vector<detail::SparseColumn<Scalar>> cols;
  for (const auto& b : basis) {
    cols.emplace_back();
    for (std::size_t i = 0; i < b.size(); ++i) detail::append(cols.back(), i, b[i], Monomial{});
  }
  detail::SparseColumn<Scalar> rhs;
  for (std::size_t i = 0; i < v.size(); ++i) detail::append(rhs, i, v[i], Monomial{});
  cols.push_back(rhs);
  std::map<std::pair<std::size_t, Monomial>, Eigen::Index, detail::MonomialPairLess> rows;
  const MatrixX<Scalar> aug = detail::assemble(cols, rows);
  return rank<Scalar>(aug) == rank<Scalar>(MatrixX<Scalar>(aug.leftCols(aug.cols() - 1)));
}

/// YES iff every contraction w(v) passes the bounded membership test against
/// `ideal`; with the zero ideal that means w(v) == 0 exactly.
template <class Scalar>
Verdict tangency_check(const VectorField<Scalar>& v, const std::vector<OneForm<Scalar>>& omega,
                       const IdealGens<Scalar>& ideal, int deg) {
  for (const auto& w : omega) {
    const auto c = contract(w, v);
    if (ideal_membership_bounded(c, ideal, deg) != Verdict::Yes) return Verdict::Unknown;
  }
  return Verdict::Yes;
}

/// Local (mod p) hypothesis: is v^p tangent, with forms and ideal reduced mod p?
inline Verdict pcurvature_tangency(const VectorField<Rational>& v, const std::vector<OneForm<Rational>>& omega,
                                   const IdealGens<Rational>& ideal, std::uint64_t p, int deg) {
  const VectorField<Fp> vp = vf_pow_p(v, p);
  std::vector<OneForm<Fp>> omega_p;
  for (const auto& w : omega) omega_p.push_back(mod_reduce(w, p));
  return tangency_check(vp, omega_p, mod_reduce(ideal, p), deg);
}

}  // namespace hodge
