#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "hodge/errors.hpp"

namespace hodge {

/// Exponent vector of a monomial.
///
/// Trailing zero exponents are not stored, so the same monomial has one
/// representation whatever the ambient variable count; `padded(n)` gives the
/// fixed-length form. Negative entries are Laurent exponents.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) { strip(); }
  Monomial(std::initializer_list<int> exps) : exps_(exps) { strip(); }

  static Monomial variable(std::size_t index, int power = 1) {
    std::vector<int> e(index + 1, 0);
    e[index] = power;
    return Monomial(std::move(e));
  }

  int operator[](std::size_t i) const { return i < exps_.size() ? exps_[i] : 0; }
  /// Index one past the last nonzero exponent.
  std::size_t support_size() const { return exps_.size(); }
  bool is_one() const { return exps_.empty(); }

  /// Total degree: sum of the non-negative entries.
  int degree() const {
    int d = 0;
    for (int e : exps_) d += std::max(e, 0);
    return d;
  }

  bool has_negative() const {
    return std::any_of(exps_.begin(), exps_.end(), [](int e) { return e < 0; });
  }

  std::vector<int> padded(std::size_t nvars) const {
    if (exps_.size() > nvars) throw VariableCountMismatch("monomial uses more variables than the ambient ring");
    std::vector<int> e(exps_);
    e.resize(nvars, 0);
    return e;
  }

  const std::vector<int>& exponents() const { return exps_; }

  /// The monomial with exponent i shifted by delta.
  Monomial shifted(std::size_t i, int delta) const {
    std::vector<int> e(exps_);
    if (e.size() <= i) e.resize(i + 1, 0);
    e[i] += delta;
    return Monomial(std::move(e));
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<int> e(std::max(a.exps_.size(), b.exps_.size()), 0);
    for (std::size_t i = 0; i < a.exps_.size(); ++i) e[i] += a.exps_[i];
    for (std::size_t i = 0; i < b.exps_.size(); ++i) e[i] += b.exps_[i];
    return Monomial(std::move(e));
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

private:
  void strip() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }

  std::vector<int> exps_;
};

/// Graded-lexicographic order: total degree first, then the first differing
/// exponent (larger exponent on x0 is larger).
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    const std::size_t n = std::max(a.support_size(), b.support_size());
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

/// Enumerates every non-negative exponent vector in `nvars` variables with
/// total degree at most `max_degree`, in graded-lex ascending order.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, int max_degree) {
  std::vector<Monomial> out;
  std::vector<int> e(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == nvars) {
      if (left == 0) out.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  for (int deg = 0; deg <= max_degree; ++deg) {
    if (nvars == 0) {
      if (deg == 0) out.emplace_back();
      continue;
    }
    rec(0, deg);
  }
  // Within a degree the recursion emits x0-heavy first; graded-lex ascending wants the reverse.
  std::stable_sort(out.begin(), out.end(), GradedLex{});
  return out;
}

}  // namespace hodge
