#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <Eigen/Core>

#include "hodge/errors.hpp"

namespace hodge {

/// Residue modulo a runtime prime.
///
/// Constants built from plain integers (Fp(0), Fp(1), ...) carry no modulus
/// yet; they bind to the modulus of the first bound operand they meet. This is
/// what lets Fp act as a scalar for generic code (Eigen, SparsePoly) without a
/// global modulus.
class Fp {
public:
  Fp() = default;
  Fp(int v) : value_(v), modulus_(0) {}  // NOLINT(google-explicit-constructor)
  Fp(std::int64_t v, std::uint64_t p) : modulus_(p) {
    if (p < 2) throw InvalidInput("modulus must be at least 2");
    value_ = reduce(v, p);
  }

  std::uint64_t modulus() const { return modulus_; }
  bool bound() const { return modulus_ != 0; }
  /// Residue in [0, p); for an unbound constant, the integer itself.
  std::int64_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  Fp inverse() const {
    if (!bound()) {
      if (value_ == 1 || value_ == -1) return *this;
      throw InvalidInput("inverse of an unbound modular constant");
    }
    if (value_ == 0) throw InvalidInput("division by zero modulo " + std::to_string(modulus_));
    // Extended Euclid on (value, p).
    std::int64_t r0 = static_cast<std::int64_t>(modulus_), r1 = value_, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t q = r0 / r1;
      std::int64_t t = r0 - q * r1; r0 = r1; r1 = t;
      t = s0 - q * s1; s0 = s1; s1 = t;
    }
    return Fp(s0, modulus_);
  }

  Fp& operator+=(const Fp& o) { return combine(o, [](std::int64_t a, std::int64_t b) { return a + b; }); }
  Fp& operator-=(const Fp& o) { return combine(o, [](std::int64_t a, std::int64_t b) { return a - b; }); }
  Fp& operator*=(const Fp& o) {
    const std::uint64_t p = join(o);
    if (p == 0) {
      value_ *= o.value_;
    } else {
      const auto a = static_cast<unsigned __int128>(reduce(value_, p));
      const auto b = static_cast<unsigned __int128>(reduce(o.value_, p));
      value_ = static_cast<std::int64_t>((a * b) % p);
    }
    modulus_ = p;
    return *this;
  }
  Fp& operator/=(const Fp& o) {
    Fp inv = o;
    if (!inv.bound() && bound()) inv = Fp(o.value_, modulus_);
    return *this *= inv.inverse();
  }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) { return Fp(0) - a; }

  friend bool operator==(const Fp& a, const Fp& b) {
    const std::uint64_t p = a.modulus_ ? a.modulus_ : b.modulus_;
    if (p == 0) return a.value_ == b.value_;
    return reduce(a.value_, p) == reduce(b.value_, p);
  }

  std::string to_string() const { return std::to_string(value_); }
  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value_; }

private:
  static std::int64_t reduce(std::int64_t v, std::uint64_t p) {
    const auto m = static_cast<std::int64_t>(p);
    std::int64_t r = v % m;
    return r < 0 ? r + m : r;
  }

  std::uint64_t join(const Fp& o) const {
    if (modulus_ && o.modulus_ && modulus_ != o.modulus_)
      throw InvalidInput("mixing residues modulo " + std::to_string(modulus_) + " and " + std::to_string(o.modulus_));
    return modulus_ ? modulus_ : o.modulus_;
  }

  template <class Op>
  Fp& combine(const Fp& o, Op op) {
    const std::uint64_t p = join(o);
    value_ = p ? reduce(op(reduce(value_, p), reduce(o.value_, p)), p) : op(value_, o.value_);
    modulus_ = p;
    return *this;
  }

  std::int64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

}  // namespace hodge

namespace Eigen {

template <>
struct NumTraits<hodge::Fp> : GenericNumTraits<hodge::Fp> {
  using Real = hodge::Fp;
  using NonInteger = hodge::Fp;
  using Nested = hodge::Fp;
  using Literal = hodge::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
