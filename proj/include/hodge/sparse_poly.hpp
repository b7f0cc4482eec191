#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hodge/errors.hpp"
#include "hodge/modp.hpp"
#include "hodge/monomial.hpp"
#include "hodge/rational.hpp"

namespace hodge {

/// Sparse multivariate polynomial / truncated power series over `Scalar`.
///
/// With a truncation D every stored term has total degree <= D and products
/// are cut at min(D_a, D_b); without one the object is an exact polynomial.
/// Terms are kept in graded-lex order with no stored zeros. nvars() == 0 marks
/// a constant that has not been tied to an ambient ring yet; it combines with
/// any variable count.
template <class Scalar>
class SparsePoly {
public:
  using Terms = std::map<Monomial, Scalar, GradedLex>;

  SparsePoly() = default;
  SparsePoly(int c) { add_term(Monomial{}, Scalar(c)); }  // NOLINT(google-explicit-constructor)
  explicit SparsePoly(const Scalar& c, std::size_t nvars = 0) : nvars_(nvars) { add_term(Monomial{}, c); }

  static SparsePoly variable(std::size_t index, std::size_t nvars) {
    if (index >= nvars) throw VariableCountMismatch("variable index out of range");
    SparsePoly p;
    p.nvars_ = nvars;
    p.add_term(Monomial::variable(index), Scalar(1));
    return p;
  }

  static SparsePoly zero(std::size_t nvars, std::optional<int> truncation = std::nullopt) {
    SparsePoly p;
    p.nvars_ = nvars;
    p.truncation_ = truncation;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  std::optional<int> truncation() const { return truncation_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Largest total degree of a stored term, -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  Scalar coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  Scalar constant_term() const { return coeff(Monomial{}); }

  /// Adds c*m, dropping it when beyond the truncation; cancellations erase the term.
  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    if (truncation_ && m.degree() > *truncation_) return;
    if (nvars_ && m.support_size() > nvars_) throw VariableCountMismatch("term uses more variables than the ring");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void set_nvars(std::size_t n) {
    for (const auto& [m, c] : terms_)
      if (m.support_size() > n) throw VariableCountMismatch("term uses more variables than the ring");
    nvars_ = n;
  }

  /// Copy restricted to total degree <= d (and carrying that truncation).
  SparsePoly truncated(int d) const {
    SparsePoly r = zero(nvars_, truncation_ ? std::min(*truncation_, d) : d);
    for (const auto& [m, c] : terms_)
      if (m.degree() <= *r.truncation_) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  /// Same terms, no truncation bound.
  SparsePoly as_polynomial() const {
    SparsePoly r = *this;
    r.truncation_.reset();
    return r;
  }

  /// Homogeneous component of total degree d.
  SparsePoly homogeneous_part(int d) const {
    SparsePoly r = zero(nvars_, truncation_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace(m, c);
    return r;
  }

  bool has_laurent_terms() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.has_negative(); });
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  SparsePoly& operator-=(const SparsePoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  SparsePoly& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(SparsePoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend SparsePoly operator*(SparsePoly a, const Scalar& s) { return a *= s; }
  friend SparsePoly operator*(const Scalar& s, SparsePoly a) { return a *= s; }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    r.nvars_ = a.nvars_;
    r.truncation_ = a.truncation_;
    r.adopt(b);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  /// Structural equality of the term maps. Truncation and arity are metadata.
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
      if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
    return true;
  }

private:
  void adopt(const SparsePoly& o) {
    if (nvars_ && o.nvars_ && nvars_ != o.nvars_)
      throw VariableCountMismatch("variable-count mismatch: " + std::to_string(nvars_) + " vs " +
                                  std::to_string(o.nvars_));
    if (!nvars_) nvars_ = o.nvars_;
    if (o.truncation_ && (!truncation_ || *o.truncation_ < *truncation_)) {
      truncation_ = o.truncation_;
      std::erase_if(terms_, [d = *truncation_](const auto& t) { return t.first.degree() > d; });
    }
  }

  std::size_t nvars_ = 0;
  std::optional<int> truncation_;
  Terms terms_;
};

using Polynomial = SparsePoly<Rational>;
using SparseSeries = SparsePoly<Rational>;
using ModPolynomial = SparsePoly<Fp>;

template <class Scalar>
using PolyMatrix = Eigen::Matrix<SparsePoly<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using PolyVector = Eigen::Matrix<SparsePoly<Scalar>, Eigen::Dynamic, 1>;

/// Coefficientwise sum; truncation is the smaller of the two.
inline SparseSeries series_add(const SparseSeries& a, const SparseSeries& b) { return a + b; }

/// Cauchy product truncated at min(D_a, D_b).
inline SparseSeries series_mul(const SparseSeries& a, const SparseSeries& b) { return a * b; }

template <class Scalar>
SparsePoly<Scalar> pow(const SparsePoly<Scalar>& p, unsigned k) {
  SparsePoly<Scalar> r(Scalar(1), p.nvars());
  SparsePoly<Scalar> base = p;
  while (k) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return r;
}

/// Partial derivative with respect to variable i (Laurent exponents allowed).
template <class Scalar>
SparsePoly<Scalar> diff(const SparsePoly<Scalar>& p, std::size_t i) {
  auto r = SparsePoly<Scalar>::zero(p.nvars(), p.truncation());
  for (const auto& [m, c] : p.terms()) {
    const int e = m[i];
    if (e != 0) r.add_term(m.shifted(i, -1), c * Scalar(e));
  }
  return r;
}

/// Exact evaluation at a point; negative exponents invert the coordinate.
template <class Scalar>
Scalar evaluate(const SparsePoly<Scalar>& p, std::span<const Scalar> point) {
  Scalar acc(0);
  for (const auto& [m, c] : p.terms()) {
    if (m.support_size() > point.size()) throw VariableCountMismatch("evaluation point too short");
    Scalar term = c;
    for (std::size_t i = 0; i < m.support_size(); ++i) {
      const int e = m[i];
      const Scalar base = e < 0 ? Scalar(1) / point[i] : point[i];
      for (int k = 0; k < (e < 0 ? -e : e); ++k) term *= base;
    }
    acc += term;
  }
  return acc;
}

/// Direct floating-point summation in graded-lex order.
inline double series_eval_float(const SparseSeries& s, std::span<const double> point) {
  if (s.nvars() && point.size() != s.nvars()) throw VariableCountMismatch("evaluation point length differs from nvars");
  double acc = 0.0;
  for (const auto& [m, c] : s.terms()) {
    if (m.support_size() > point.size()) throw VariableCountMismatch("evaluation point too short");
    double term = c.to_double();
    for (std::size_t i = 0; i < m.support_size(); ++i) {
      const int e = m[i];
      for (int k = 0; k < (e < 0 ? -e : e); ++k) term = e < 0 ? term / point[i] : term * point[i];
    }
    acc += term;
  }
  return acc;
}

/// Reduction of a rational coefficient modulo p.
inline Fp mod_reduce(const Rational& r, std::uint64_t p) {
  const Integer pz(static_cast<unsigned long>(p));
  const Integer den = r.denominator();
  if (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t()))
    throw DenominatorDivisibleByP("coefficient " + r.to_string() + " is not " + std::to_string(p) + "-integral");
  Integer num = r.numerator() % pz;
  if (num < 0) num += pz;
  const Integer dm = den % pz;
  return Fp(static_cast<std::int64_t>(num.get_si()), p) / Fp(static_cast<std::int64_t>(dm.get_si()), p);
}

/// Coefficientwise reduction modulo a prime; a ring homomorphism on p-integral input.
inline ModPolynomial mod_reduce(const Polynomial& f, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  auto r = ModPolynomial::zero(f.nvars(), f.truncation());
  for (const auto& [m, c] : f.terms()) r.add_term(m, mod_reduce(c, p));
  return r;
}

/// Applies `f` to every coefficient, dropping zeros.
template <class To, class From, class F>
SparsePoly<To> map_coefficients(const SparsePoly<From>& p, F f) {
  auto r = SparsePoly<To>::zero(p.nvars(), p.truncation());
  for (const auto& [m, c] : p.terms()) r.add_term(m, f(c));
  return r;
}

template <class Scalar>
PolyMatrix<Scalar> diff(const PolyMatrix<Scalar>& m, std::size_t i) {
  return m.unaryExpr([i](const SparsePoly<Scalar>& p) { return diff(p, i); });
}

template <class Scalar>
PolyMatrix<Scalar> truncated(const PolyMatrix<Scalar>& m, int d) {
  return m.unaryExpr([d](const SparsePoly<Scalar>& p) { return p.truncated(d); });
}

template <class Scalar>
bool all_zero(const PolyMatrix<Scalar>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

}  // namespace hodge

namespace Eigen {

template <class Scalar>
struct NumTraits<hodge::SparsePoly<Scalar>> : GenericNumTraits<hodge::SparsePoly<Scalar>> {
  using Real = hodge::SparsePoly<Scalar>;
  using NonInteger = hodge::SparsePoly<Scalar>;
  using Nested = hodge::SparsePoly<Scalar>;
  using Literal = hodge::SparsePoly<Scalar>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 200,
    MulCost = 2000
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
