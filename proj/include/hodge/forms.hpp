#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hodge/errors.hpp"
#include "hodge/sparse_poly.hpp"

namespace hodge {

/// Ordered variable names of a polynomial ring, with the subset allowed to
/// carry negative exponents.
struct PolyContext {
  std::vector<std::string> names;
  std::vector<bool> laurent;

  PolyContext() = default;
  explicit PolyContext(std::vector<std::string> vars, const std::vector<std::string>& laurent_vars = {});

  std::size_t size() const { return names.size(); }
  /// Index of `name`, or throws InvalidInput.
  std::size_t index_of(const std::string& name) const;
  bool is_laurent(std::size_t i) const { return i < laurent.size() && laurent[i]; }

  /// Throws ContextMismatch when p uses unknown variables or forbidden negative exponents.
  template <class Scalar>
  void validate(const SparsePoly<Scalar>& p) const;

  friend bool operator==(const PolyContext&, const PolyContext&) = default;
};

inline PolyContext::PolyContext(std::vector<std::string> vars, const std::vector<std::string>& laurent_vars)
    : names(std::move(vars)), laurent(names.size(), false) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw InvalidInput("duplicate variable name '" + names[i] + "'");
  for (const auto& l : laurent_vars) laurent[index_of(l)] = true;
}

inline std::size_t PolyContext::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw InvalidInput("unknown variable '" + name + "'");
}

template <class Scalar>
void PolyContext::validate(const SparsePoly<Scalar>& p) const {
  if (p.nvars() && p.nvars() != size()) throw ContextMismatch("polynomial arity differs from context");
  for (const auto& [m, c] : p.terms()) {
    if (m.support_size() > size()) throw ContextMismatch("polynomial uses a variable outside the context");
    for (std::size_t i = 0; i < m.support_size(); ++i)
      if (m[i] < 0 && !is_laurent(i))
        throw ContextMismatch("negative exponent on non-Laurent variable '" + names[i] + "'");
  }
}

/// Derivation sum_i coeffs[i] * d/dx_i.
template <class Scalar>
struct VectorField {
  PolyVector<Scalar> coeffs;

  VectorField() = default;
  explicit VectorField(std::size_t n) : coeffs(PolyVector<Scalar>::Constant(static_cast<Eigen::Index>(n), 0)) {}
  explicit VectorField(PolyVector<Scalar> c) : coeffs(std::move(c)) {}

  /// Coordinate field d/dx_i.
  static VectorField coordinate(std::size_t i, std::size_t n) {
    VectorField v(n);
    v.coeffs(static_cast<Eigen::Index>(i)) = SparsePoly<Scalar>(Scalar(1), n);
    return v;
  }

  std::size_t size() const { return static_cast<std::size_t>(coeffs.size()); }
  const SparsePoly<Scalar>& operator[](std::size_t i) const { return coeffs(static_cast<Eigen::Index>(i)); }
  SparsePoly<Scalar>& operator[](std::size_t i) { return coeffs(static_cast<Eigen::Index>(i)); }
  bool is_zero() const { return all_zero<Scalar>(coeffs); }

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.size() == b.size() && a.coeffs == b.coeffs;
  }
};

/// 1-form sum_i coeffs[i] dx_i.
template <class Scalar>
struct OneForm {
  PolyVector<Scalar> coeffs;

  OneForm() = default;
  explicit OneForm(std::size_t n) : coeffs(PolyVector<Scalar>::Constant(static_cast<Eigen::Index>(n), 0)) {}
  explicit OneForm(PolyVector<Scalar> c) : coeffs(std::move(c)) {}

  std::size_t size() const { return static_cast<std::size_t>(coeffs.size()); }
  const SparsePoly<Scalar>& operator[](std::size_t i) const { return coeffs(static_cast<Eigen::Index>(i)); }
  SparsePoly<Scalar>& operator[](std::size_t i) { return coeffs(static_cast<Eigen::Index>(i)); }
  bool is_zero() const { return all_zero<Scalar>(coeffs); }

  friend bool operator==(const OneForm& a, const OneForm& b) { return a.size() == b.size() && a.coeffs == b.coeffs; }
};

/// 2-form sum_{i<j} coeffs[(i,j)] dx_i ^ dx_j; zero coefficients are not stored.
template <class Scalar>
struct TwoForm {
  std::map<std::pair<std::size_t, std::size_t>, SparsePoly<Scalar>> coeffs;

  /// Adds c * dx_i ^ dx_j, reordering to i < j.
  void add(std::size_t i, std::size_t j, const SparsePoly<Scalar>& c) {
    if (i == j || c.is_zero()) return;
    auto key = i < j ? std::pair{i, j} : std::pair{j, i};
    auto& slot = coeffs[key];
    if (i < j) slot += c;
    else slot -= c;
    if (slot.is_zero()) coeffs.erase(key);
  }

  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const TwoForm&, const TwoForm&) = default;
};

namespace detail {
inline void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw ContextMismatch("objects live in rings with different variable counts");
}
}  // namespace detail

/// v(f) = sum_i v_i * df/dx_i.
template <class Scalar>
SparsePoly<Scalar> vf_apply(const VectorField<Scalar>& v, const SparsePoly<Scalar>& f) {
  if (f.nvars()) detail::require_same_size(v.size(), f.nvars());
  SparsePoly<Scalar> r = SparsePoly<Scalar>::zero(f.nvars());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r += v[i] * diff(f, i);
  return r;
}

template <class Scalar>
OneForm<Scalar> d_poly(const SparsePoly<Scalar>& f, std::size_t nvars) {
  if (f.nvars()) detail::require_same_size(nvars, f.nvars());
  OneForm<Scalar> w(nvars);
  for (std::size_t i = 0; i < nvars; ++i) w[i] = diff(f, i);
  return w;
}

template <class Scalar>
TwoForm<Scalar> d_oneform(const OneForm<Scalar>& w) {
  TwoForm<Scalar> r;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) r.add(i, j, diff(w[j], i) - diff(w[i], j));
  return r;
}

template <class Scalar>
TwoForm<Scalar> wedge(const OneForm<Scalar>& a, const OneForm<Scalar>& b) {
  detail::require_same_size(a.size(), b.size());
  TwoForm<Scalar> r;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) r.add(i, j, a[i] * b[j] - a[j] * b[i]);
  return r;
}

/// Contraction w(v) = sum_i w_i v_i.
template <class Scalar>
SparsePoly<Scalar> contract(const OneForm<Scalar>& w, const VectorField<Scalar>& v) {
  detail::require_same_size(w.size(), v.size());
  SparsePoly<Scalar> r;
  for (std::size_t i = 0; i < w.size(); ++i) r += w[i] * v[i];
  return r;
}

/// Value of w at t against the tangent vector v.
template <class Scalar>
Scalar pairing_eval(const OneForm<Scalar>& w, std::span<const Scalar> v, std::span<const Scalar> t) {
  detail::require_same_size(w.size(), v.size());
  Scalar acc(0);
  for (std::size_t i = 0; i < w.size(); ++i) acc += evaluate(w[i], t) * v[i];
  return acc;
}

/// Rectangular matrix of 1-forms, stored as one coefficient matrix per
/// differential: B = sum_k parts[k] dz_k.
template <class Scalar>
struct FormMatrix {
  std::vector<PolyMatrix<Scalar>> parts;

  FormMatrix() = default;
  FormMatrix(Eigen::Index rows, Eigen::Index cols, std::size_t nvars)
      : parts(nvars, PolyMatrix<Scalar>::Constant(rows, cols, 0)) {}

  std::size_t nvars() const { return parts.size(); }
  Eigen::Index rows() const { return parts.empty() ? 0 : parts.front().rows(); }
  Eigen::Index cols() const { return parts.empty() ? 0 : parts.front().cols(); }

  OneForm<Scalar> entry(Eigen::Index i, Eigen::Index j) const {
    OneForm<Scalar> w(nvars());
    for (std::size_t k = 0; k < nvars(); ++k) w[k] = parts[k](i, j);
    return w;
  }

  void set_entry(Eigen::Index i, Eigen::Index j, const OneForm<Scalar>& w) {
    detail::require_same_size(w.size(), nvars());
    for (std::size_t k = 0; k < nvars(); ++k) parts[k](i, j) = w[k];
  }

  bool is_zero() const {
    for (const auto& p : parts)
      if (!all_zero<Scalar>(p)) return false;
    return true;
  }

  FormMatrix block(Eigen::Index r0, Eigen::Index c0, Eigen::Index nr, Eigen::Index nc) const {
    FormMatrix out;
    for (const auto& p : parts) out.parts.emplace_back(p.block(r0, c0, nr, nc));
    return out;
  }

  friend FormMatrix operator+(FormMatrix a, const FormMatrix& b) {
    detail::require_same_size(a.nvars(), b.nvars());
    for (std::size_t k = 0; k < a.nvars(); ++k) a.parts[k] += b.parts[k];
    return a;
  }
  friend FormMatrix operator-(FormMatrix a, const FormMatrix& b) {
    detail::require_same_size(a.nvars(), b.nvars());
    for (std::size_t k = 0; k < a.nvars(); ++k) a.parts[k] -= b.parts[k];
    return a;
  }
  friend FormMatrix operator-(FormMatrix a) {
    for (auto& p : a.parts) p = -p;
    return a;
  }
  friend FormMatrix operator*(const PolyMatrix<Scalar>& m, const FormMatrix& b) {
    FormMatrix out;
    for (const auto& p : b.parts) out.parts.emplace_back(m * p);
    return out;
  }
  friend FormMatrix operator*(const FormMatrix& b, const PolyMatrix<Scalar>& m) {
    FormMatrix out;
    for (const auto& p : b.parts) out.parts.emplace_back(p * m);
    return out;
  }
  friend bool operator==(const FormMatrix& a, const FormMatrix& b) {
    if (a.nvars() != b.nvars()) return false;
    for (std::size_t k = 0; k < a.nvars(); ++k)
      if (a.parts[k].rows() != b.parts[k].rows() || a.parts[k].cols() != b.parts[k].cols() ||
          !(a.parts[k] == b.parts[k]))
        return false;
    return true;
  }
};

/// Matrix of 2-forms: sum_{k<l} parts[(k,l)] dz_k ^ dz_l, zero blocks dropped.
template <class Scalar>
struct TwoFormMatrix {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::map<std::pair<std::size_t, std::size_t>, PolyMatrix<Scalar>> parts;

  void add(std::size_t k, std::size_t l, const PolyMatrix<Scalar>& m) {
    if (k == l || all_zero<Scalar>(m)) return;
    auto key = k < l ? std::pair{k, l} : std::pair{l, k};
    auto it = parts.find(key);
    if (it == parts.end()) it = parts.emplace(key, PolyMatrix<Scalar>::Constant(m.rows(), m.cols(), 0)).first;
    if (k < l) it->second += m;
    else it->second -= m;
    if (all_zero<Scalar>(it->second)) parts.erase(it);
  }

  bool is_zero() const { return parts.empty(); }

  TwoForm<Scalar> entry(Eigen::Index i, Eigen::Index j) const {
    TwoForm<Scalar> w;
    for (const auto& [key, m] : parts) w.add(key.first, key.second, m(i, j));
    return w;
  }

  friend bool operator==(const TwoFormMatrix& a, const TwoFormMatrix& b) {
    if (a.parts.size() != b.parts.size()) return false;
    for (auto ia = a.parts.begin(), ib = b.parts.begin(); ia != a.parts.end(); ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    return true;
  }
};

/// dY = sum_k dY/dz_k dz_k for a matrix of functions.
template <class Scalar>
FormMatrix<Scalar> d_matrix(const PolyMatrix<Scalar>& y, std::size_t nvars) {
  FormMatrix<Scalar> out;
  for (std::size_t k = 0; k < nvars; ++k) out.parts.push_back(diff<Scalar>(y, k));
  return out;
}

/// Exterior derivative of a matrix of 1-forms.
template <class Scalar>
TwoFormMatrix<Scalar> d_matrix(const FormMatrix<Scalar>& b) {
  TwoFormMatrix<Scalar> out{b.rows(), b.cols(), {}};
  for (std::size_t k = 0; k < b.nvars(); ++k)
    for (std::size_t l = k + 1; l < b.nvars(); ++l)
      out.add(k, l, PolyMatrix<Scalar>(diff<Scalar>(b.parts[l], k) - diff<Scalar>(b.parts[k], l)));
  return out;
}

/// (a ^ b)_{ij} = sum_m a_{im} ^ b_{mj}.
template <class Scalar>
TwoFormMatrix<Scalar> wedge(const FormMatrix<Scalar>& a, const FormMatrix<Scalar>& b) {
  detail::require_same_size(a.nvars(), b.nvars());
  if (a.cols() != b.rows()) throw InvalidInput("wedge of form matrices with incompatible shapes");
  TwoFormMatrix<Scalar> out{a.rows(), b.cols(), {}};
  for (std::size_t k = 0; k < a.nvars(); ++k)
    for (std::size_t l = k + 1; l < a.nvars(); ++l)
      out.add(k, l, PolyMatrix<Scalar>(a.parts[k] * b.parts[l] - a.parts[l] * b.parts[k]));
  return out;
}

/// dB == B ^ B, entrywise and exactly.
template <class Scalar>
bool integrability_check(const FormMatrix<Scalar>& b) {
  if (b.rows() != b.cols()) throw InvalidInput("integrability check needs a square matrix");
  return d_matrix(b) == wedge(b, b);
}

}  // namespace hodge
