#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hodge/rational.hpp"
#include "hodge/sparse_poly.hpp"

namespace hodge {

/// Fermat deformation f_t = -x0^d + x1^d - ... + x_{n+1}^d - sum_{alpha in I} t_alpha x^alpha.
struct FamilySpec {
  int n = 2;  // fiber dimension, even
  int d = 4;  // degree
  std::vector<std::vector<int>> deformations;  // I, each of length n+2 summing to d
  int truncation = 0;  // total-degree bound on t^a

  /// Throws InvalidInput on odd n, bad lengths, wrong degrees or duplicates.
  void validate() const;
};

/// Monomial x^beta of a residue form x^beta Omega / f^k.
struct BetaIndex {
  std::vector<int> beta;
  int k = 1;

  friend bool operator==(const BetaIndex&, const BetaIndex&) = default;
};

/// Truncated normalized period series of one Griffiths form.
struct PeriodSeries {
  FamilySpec spec;
  BetaIndex beta;
  SparseSeries series;      // in |I| variables t_alpha
  std::string normalization;  // left-hand factor, text only
};

struct DenominatorProfile {
  Integer lcm = 1;
  std::vector<std::pair<Integer, unsigned>> factorization;  // ascending primes
  Integer unfactored_cofactor = 1;

  /// "2^85 * 11", "1" for lcm 1; an incomplete factorization ends in "* [c]".
  std::string to_string() const;
  friend bool operator==(const DenominatorProfile&, const DenominatorProfile&) = default;
};

/// (x)_y = x (x+1) ... (x+y-1), with (x)_0 = 1.
Rational pochhammer(const Rational& x, unsigned long y);

/// Floor and fractional part: [r] <= r < [r] + 1, {r} = r - [r].
std::pair<Integer, Rational> int_frac(const Rational& r);

/// k = sum_i (beta_i + 1) / d; throws NotIntegral unless k is a positive integer.
int pole_order(std::span<const int> beta, int d);

BetaIndex make_beta(std::vector<int> beta, int d);

/// {(b_{2e}+1)/d} + {(b_{2e+1}+1)/d} = 1 for every e = 0..n/2.
bool period_support_condition(std::span<const int> beta_check, int d, int n);

/// D = prod_i ({(b_i+1)/d})_{[(b_i+1)/d]}.
Rational d_coefficient(std::span<const int> beta_check, int d);

/// E = sum_e [(b_{2e}+1)/d].
int e_sign(std::span<const int> beta_check, int d, int n);

/// beta + sum_alpha a_alpha * alpha.
std::vector<int> shifted_beta(std::span<const int> a, const BetaIndex& beta, const FamilySpec& spec);

/// Coefficient of t^a: (-1)^E D / a! when period_support_condition holds for beta + a*, else 0.
Rational period_coefficient(std::span<const int> a, const BetaIndex& beta, const FamilySpec& spec);

/// All coefficients with |a| <= spec.truncation. `threads` splits the work by
/// the exponent of the first deformation; the result does not depend on it.
PeriodSeries period_series(const BetaIndex& beta, const FamilySpec& spec, unsigned threads = 1);

/// Text rendering of the normalizing constant on the period side.
std::string normalization_text(const BetaIndex& beta, const FamilySpec& spec);

/// All exponent vectors of length nvars and total degree d, x0-heavy first.
std::vector<std::vector<int>> monomials_of_degree(std::size_t nvars, int d);

/// The quartic-surface period series over all 35 degree-4 monomials, coded
/// from the closed form with <r> = (r-1)(r-2)...({r}). Variables follow
/// monomials_of_degree(4, 4).
SparseSeries quartic_closed_form_series(int truncation);

/// beta with 0 <= beta_i <= d-2 and d | sum(beta_i + 1), ordered by pole order
/// and then by exponents read from the last variable, largest first.
std::vector<BetaIndex> griffiths_basis(int d, int n);

/// Lcm of coefficient denominators, factored by trial division up to `trial_bound`.
DenominatorProfile denominator_profile(const SparseSeries& series, unsigned long trial_bound = 1000000);
inline DenominatorProfile denominator_profile(const PeriodSeries& ps, unsigned long trial_bound = 1000000) {
  return denominator_profile(ps.series, trial_bound);
}

/// Weighted-hypersurface Hodge-Tate criterion: n/2 <= (v_1 + ... + v_{n+1}) / d with v_0 = 1.
bool steenbrink_hodge_tate(int d, std::span<const int> weights, int n);

/// "x0*x1^2*x3", "1" for the zero vector.
std::string render_monomial(std::span<const int> exps, std::string_view var_prefix = "x");

/// Parsed family configuration: the family plus the beta list (explicit or the Griffiths basis).
struct FamilyConfig {
  FamilySpec spec;
  std::vector<BetaIndex> betas;
};

/// Reads `{n, d, I, truncation, beta}` where beta is a list of exponent vectors or "griffiths".
FamilyConfig parse_family_config(std::string_view json_text);

/// One row per beta: "monomial_beta,lcm,factorization" with a header line.
std::string denominator_table(const FamilyConfig& config, unsigned threads = 1);

}  // namespace hodge
