#pragma once

#include <span>
#include <vector>

#include "hodge/rational.hpp"

namespace hodge {

/// Parameters of the Gauss function 2F1(a, b; c; z).
struct HypParams {
  Rational a, b, c;
};

/// Exact coefficients (a)_n (b)_n / ((c)_n n!) for n = 0..terms-1.
/// Throws InvalidInput when c is a non-positive integer.
std::vector<Rational> hyp2f1_coefficients(const HypParams& p, int terms);

/// Floating-point evaluation with a rigorous bound on the omitted tail.
class Hyp2F1 {
public:
  struct Value {
    double sum = 0;
    double tail_bound = 0;  // |F(z) - sum| <= tail_bound, up to rounding in the partial sum
    int terms = 0;
  };

  static constexpr int kDefaultTerms = 4096;

  explicit Hyp2F1(const HypParams& p, int max_terms = kDefaultTerms);

  /// Sums until the tail bound drops below tol; throws OutOfDomain for |z| >= 1
  /// and ResourceLimit when the coefficient table is exhausted first.
  Value eval(double z, double tol) const;

  /// Partial sum of the first `terms` terms and its tail bound.
  Value partial(double z, int terms) const;

private:
  double tail_after(double z, int n, double last_term) const;

  HypParams params_;
  std::vector<double> coeffs_;
};

/// Lower end of the sampled domain; the upper end is 1 - delta.
inline constexpr double kTauDelta = 0.01;

/// 2F1(1/2, 1/2; 1; z) with a shared precomputed table.
double hyp_half(double z, double tol);

/// Im tau(t) = F(1-t) / F(t) for F = 2F1(1/2, 1/2; 1; .); t in [delta, 1-delta].
double tau_of_t(double t, double tol);

/// Root of tau(t) = s on [delta, 1-delta]; throws TargetOutOfRange when s is
/// outside tau of that interval.
double invert_tau(double s, double tol);

/// F(1-t1) F(t2) - N F(1-t2) F(t1).
double g_n(double t1, double t2, int n, double tol);

struct LocusPoint {
  double t1 = 0;
  double t2 = 0;
  double residual = 0;
  bool flagged = false;  // residual >= tol
};

struct LocusSample {
  int n = 0;
  std::vector<LocusPoint> points;
  std::vector<double> skipped;  // t1 with tau(t1)/N outside the attainable range
};

/// k equally spaced points from delta to 1-delta.
std::vector<double> uniform_grid(int k);

/// For each t1 in the grid solves tau(t2) = tau(t1)/N and records |g_N|.
LocusSample sample_locus(int n, std::span<const double> grid, double tol);

}  // namespace hodge
