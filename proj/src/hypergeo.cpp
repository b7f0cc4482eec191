#include "hodge/hypergeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hodge/errors.hpp"

namespace hodge {

std::vector<Rational> hyp2f1_coefficients(const HypParams& p, int terms) {
  if (p.c.is_integer() && p.c.sign() <= 0) throw InvalidInput("c must not be a non-positive integer");
  if (terms < 0) throw InvalidInput("term count must be non-negative");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(terms));
  Rational c(1);
  for (int n = 0; n < terms; ++n) {
    out.push_back(c);
    const Rational rn(n);
    c = c * (p.a + rn) * (p.b + rn) / ((p.c + rn) * (rn + Rational(1)));
  }
  return out;
}

Hyp2F1::Hyp2F1(const HypParams& p, int max_terms) : params_(p) {
  for (const auto& c : hyp2f1_coefficients(p, max_terms)) coeffs_.push_back(c.to_double());
}

double Hyp2F1::tail_after(double z, int n, double last_term) const {
  // Terms beyond index n shrink by at most r = max(rho_n, |z|), where rho_n is the
  // current ratio; the ratio tends to |z| monotonically for large n.
  const double a = params_.a.to_double(), b = params_.b.to_double(), c = params_.c.to_double();
  const double az = std::abs(z);
  const double rho = std::abs((a + n) * (b + n) / ((c + n) * (n + 1.0))) * az;
  const double r = std::max(rho, az);
  if (r >= 1) return std::numeric_limits<double>::infinity();
  return std::abs(last_term) * rho / (1 - r);
}

Hyp2F1::Value Hyp2F1::partial(double z, int terms) const {
  if (!(std::abs(z) < 1)) throw OutOfDomain("2F1 series needs |z| < 1");
  if (terms < 1 || terms > static_cast<int>(coeffs_.size())) throw ResourceLimit("term count exceeds the coefficient table");
  Value v;
  double zn = 1;
  double term = 0;
  for (int n = 0; n < terms; ++n) {
    term = coeffs_[static_cast<std::size_t>(n)] * zn;
    v.sum += term;
    zn *= z;
  }
  v.terms = terms;
  v.tail_bound = tail_after(z, terms - 1, term);
  return v;
}

Hyp2F1::Value Hyp2F1::eval(double z, double tol) const {
  if (!(std::abs(z) < 1)) throw OutOfDomain("2F1 series needs |z| < 1");
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  Value v;
  double zn = 1;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    const double term = coeffs_[n] * zn;
    v.sum += term;
    zn *= z;
    const double tail = tail_after(z, static_cast<int>(n), term);
    if (tail < tol) {
      v.terms = static_cast<int>(n) + 1;
      v.tail_bound = tail;
      return v;
    }
  }
  throw ResourceLimit("2F1 tail bound did not reach the requested tolerance");
}

namespace {

const Hyp2F1& half_series() {
  static const Hyp2F1 f(HypParams{Rational(1, 2), Rational(1, 2), Rational(1)});
  return f;
}

void require_domain(double t) {
  constexpr double slack = 1e-12;
  if (!(t >= kTauDelta - slack && t <= 1 - kTauDelta + slack))
    throw OutOfDomain("t must lie in [0.01, 0.99]");
}

}  // namespace

double hyp_half(double z, double tol) { return half_series().eval(z, tol).sum; }

double tau_of_t(double t, double tol) {
  require_domain(t);
  return hyp_half(1 - t, tol) / hyp_half(t, tol);
}

double invert_tau(double s, double tol) {
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  const double inner = std::min(tol * 1e-3, 1e-13);
  double lo = kTauDelta, hi = 1 - kTauDelta;
  const double s_max = tau_of_t(lo, inner);
  const double s_min = tau_of_t(hi, inner);
  const double slack = 1e-12 * s_max;
  if (!(s >= s_min - slack && s <= s_max + slack)) throw TargetOutOfRange("target outside tau([0.01, 0.99])");
  if (s <= s_min) return hi;
  if (s >= s_max) return lo;
  // tau is strictly decreasing on the interval.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = tau_of_t(mid, inner);
    if (std::abs(v - s) < tol * 0.1 || hi - lo < 4 * std::numeric_limits<double>::epsilon()) return mid;
    if (v > s) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double g_n(double t1, double t2, int n, double tol) {
  require_domain(t1);
  require_domain(t2);
  return hyp_half(1 - t1, tol) * hyp_half(t2, tol) - n * hyp_half(1 - t2, tol) * hyp_half(t1, tol);
}

std::vector<double> uniform_grid(int k) {
  if (k < 1) throw InvalidInput("grid needs at least one point");
  std::vector<double> g;
  if (k == 1) return {0.5};
  for (int i = 0; i < k; ++i) g.push_back(kTauDelta + (1 - 2 * kTauDelta) * i / (k - 1));
  return g;
}

LocusSample sample_locus(int n, std::span<const double> grid, double tol) {
  if (n < 1) throw InvalidInput("N must be a positive integer");
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  LocusSample out;
  out.n = n;
  const double inner = std::min(tol * 1e-3 / n, 1e-13);
  for (double t1 : grid) {
    const double s = tau_of_t(t1, inner) / n;
    double t2;
    try {
      t2 = invert_tau(s, inner);
    } catch (const TargetOutOfRange&) {
      out.skipped.push_back(t1);
      continue;
    }
    const double r = std::abs(g_n(t1, t2, n, inner));
    out.points.push_back(LocusPoint{t1, t2, r, !(r < tol)});
  }
  return out;
}

}  // namespace hodge
