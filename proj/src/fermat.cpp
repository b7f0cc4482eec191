#include "hodge/fermat.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "hodge/errors.hpp"

namespace hodge {

namespace {

// (beta_i + 1) = q*d + r with 0 <= r < d.
struct SplitExponent {
  long q;
  long r;
};

SplitExponent split(long b_plus_one, long d) {
  long q = b_plus_one / d;
  long r = b_plus_one % d;
  if (r < 0) {
    r += d;
    --q;
  }
  return {q, r};
}

}  // namespace

void FamilySpec::validate() const {
  if (n < 0 || n % 2) throw InvalidInput("n must be a non-negative even integer, got " + std::to_string(n));
  if (d < 2) throw InvalidInput("degree d must be at least 2, got " + std::to_string(d));
  if (truncation < 0) throw InvalidInput("truncation must be non-negative");
  std::set<std::vector<int>> seen;
  for (const auto& alpha : deformations) {
    if (alpha.size() != static_cast<std::size_t>(n + 2))
      throw InvalidInput("deformation monomial " + render_monomial(alpha) + " has " + std::to_string(alpha.size()) +
                         " exponents, expected " + std::to_string(n + 2));
    if (std::any_of(alpha.begin(), alpha.end(), [](int e) { return e < 0; }))
      throw InvalidInput("deformation exponents must be non-negative");
    if (std::accumulate(alpha.begin(), alpha.end(), 0) != d)
      throw InvalidInput("deformation monomial " + render_monomial(alpha) + " is not of degree " + std::to_string(d));
    if (!seen.insert(alpha).second) throw InvalidInput("duplicate deformation monomial " + render_monomial(alpha));
  }
}

Rational pochhammer(const Rational& x, unsigned long y) {
  Rational acc(1);
  Rational f = x;
  for (unsigned long j = 0; j < y; ++j, f += Rational(1)) acc *= f;
  return acc;
}

std::pair<Integer, Rational> int_frac(const Rational& r) {
  Integer fl = r.floor();
  return {fl, r - Rational(fl)};
}

int pole_order(std::span<const int> beta, int d) {
  if (d < 1) throw InvalidInput("degree must be positive");
  long s = 0;
  for (int b : beta) s += b + 1;
  if (s % d) throw NotIntegral("sum of (beta_i + 1) = " + std::to_string(s) + " is not divisible by " + std::to_string(d));
  if (s <= 0) throw NotIntegral("pole order must be positive");
  return static_cast<int>(s / d);
}

BetaIndex make_beta(std::vector<int> beta, int d) {
  const int k = pole_order(beta, d);
  return BetaIndex{std::move(beta), k};
}

bool period_support_condition(std::span<const int> beta_check, int d, int n) {
  if (beta_check.size() != static_cast<std::size_t>(n + 2)) throw VariableCountMismatch("beta has the wrong length");
  for (int e = 0; e <= n / 2; ++e) {
    const long r0 = split(beta_check[2 * e] + 1L, d).r;
    const long r1 = split(beta_check[2 * e + 1] + 1L, d).r;
    if (r0 + r1 != d) return false;
  }
  return true;
}

Rational d_coefficient(std::span<const int> beta_check, int d) {
  // ({(b+1)/d})_{[(b+1)/d]} = prod_{j<q} (r + j d) / d^q.
  Integer num = 1;
  unsigned long dpow = 0;
  for (int b : beta_check) {
    const auto [q, r] = split(b + 1L, d);
    if (q < 0) throw InvalidInput("negative exponent in beta + a*");
    for (long j = 0; j < q; ++j) num *= r + j * d;
    dpow += static_cast<unsigned long>(q);
  }
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(d), dpow);
  return Rational(num, den);
}

int e_sign(std::span<const int> beta_check, int d, int n) {
  long e = 0;
  for (int i = 0; i <= n / 2; ++i) e += split(beta_check[2 * i] + 1L, d).q;
  return static_cast<int>(e);
}

std::vector<int> shifted_beta(std::span<const int> a, const BetaIndex& beta, const FamilySpec& spec) {
  if (a.size() != spec.deformations.size())
    throw VariableCountMismatch("exponent vector has " + std::to_string(a.size()) + " entries, family has " +
                                std::to_string(spec.deformations.size()) + " parameters");
  if (beta.beta.size() != static_cast<std::size_t>(spec.n + 2)) throw VariableCountMismatch("beta has the wrong length");
  std::vector<int> out = beta.beta;
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[j] * spec.deformations[j][i];
  return out;
}

namespace {

// Sign and unnormalized value (-1)^E D for a shifted beta satisfying period_support_condition.
Rational signed_d(std::span<const int> bc, int d, int n) {
  Rational v = d_coefficient(bc, d);
  return e_sign(bc, d, n) % 2 ? -v : v;
}

Integer multi_factorial(std::span<const int> a) {
  Integer f = 1;
  for (int e : a) f *= factorial(static_cast<unsigned long>(e));
  return f;
}

}  // namespace

Rational period_coefficient(std::span<const int> a, const BetaIndex& beta, const FamilySpec& spec) {
  if (std::any_of(a.begin(), a.end(), [](int e) { return e < 0; })) throw InvalidInput("negative exponent in a");
  const auto bc = shifted_beta(a, beta, spec);
  if (!period_support_condition(bc, spec.d, spec.n)) return Rational(0);
  return signed_d(bc, spec.d, spec.n) / Rational(multi_factorial(a));
}

namespace {

using Term = std::pair<Monomial, Rational>;

// Depth-first enumeration of a with |a| <= budget; beta_check is maintained
// incrementally and a! is accumulated along the path.
class Enumerator {
public:
  Enumerator(const FamilySpec& spec, std::vector<Term>& out) : spec_(spec), out_(out), a_(spec.deformations.size(), 0) {}

  void run(std::size_t slot, int budget, std::vector<int>& bc, const Integer& afact) {
    if (slot == a_.size()) {
      if (period_support_condition(bc, spec_.d, spec_.n)) {
        Monomial m{std::vector<int>(a_)};
        out_.emplace_back(std::move(m), signed_d(bc, spec_.d, spec_.n) / Rational(afact));
      }
      return;
    }
    const auto& alpha = spec_.deformations[slot];
    Integer f = afact;
    for (int e = 0; e <= budget; ++e) {
      if (e > 0) {
        for (std::size_t i = 0; i < bc.size(); ++i) bc[i] += alpha[i];
        f *= e;
      }
      a_[slot] = e;
      run(slot + 1, budget - e, bc, f);
    }
    for (std::size_t i = 0; i < bc.size(); ++i) bc[i] -= budget * alpha[i];
    a_[slot] = 0;
  }

  std::vector<int>& a() { return a_; }

private:
  const FamilySpec& spec_;
  std::vector<Term>& out_;
  std::vector<int> a_;
};

}  // namespace

PeriodSeries period_series(const BetaIndex& beta, const FamilySpec& spec, unsigned threads) {
  spec.validate();
  if (beta.beta.size() != static_cast<std::size_t>(spec.n + 2)) throw VariableCountMismatch("beta has the wrong length");
  if (pole_order(beta.beta, spec.d) != beta.k) throw InvalidInput("beta.k does not match the pole order of beta");

  const std::size_t m = spec.deformations.size();
  const int trunc = spec.truncation;
  PeriodSeries out{spec, beta, SparseSeries::zero(m, trunc), normalization_text(beta, spec)};

  if (m == 0) {
    if (period_support_condition(beta.beta, spec.d, spec.n)) out.series.add_term(Monomial{}, signed_d(beta.beta, spec.d, spec.n));
    return out;
  }

  // Work item e fixes the exponent of the first deformation.
  const int items = trunc + 1;
  std::vector<std::vector<Term>> chunks(static_cast<std::size_t>(items));
  auto work = [&](int e0) {
    std::vector<Term>& local = chunks[static_cast<std::size_t>(e0)];
    Enumerator en(spec, local);
    std::vector<int> bc = beta.beta;
    for (std::size_t i = 0; i < bc.size(); ++i) bc[i] += e0 * spec.deformations[0][i];
    en.a()[0] = e0;
    en.run(1, trunc - e0, bc, Integer(factorial(static_cast<unsigned long>(e0))));
  };

  const unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items)));
  if (nthreads == 1) {
    for (int e0 = 0; e0 < items; ++e0) work(e0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        for (int e0 = static_cast<int>(t); e0 < items; e0 += static_cast<int>(nthreads)) work(e0);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& chunk : chunks)
    for (const auto& [mono, c] : chunk) out.series.add_term(mono, c);
  return out;
}

std::string normalization_text(const BetaIndex& beta, const FamilySpec& spec) {
  const int half = spec.n / 2;
  Integer c;
  mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(spec.d), static_cast<unsigned long>(half + 1));
  c *= factorial(static_cast<unsigned long>(beta.k - 1));
  if (half % 2) c = -c;
  std::ostringstream os;
  os << c.get_str() << "/(2*pi*i)^" << half << " * integral over delta_t of Resi(x^beta Omega / f_t^" << beta.k
     << "), x^beta = " << render_monomial(beta.beta);
  return os.str();
}

std::vector<std::vector<int>> monomials_of_degree(std::size_t nvars, int d) {
  std::vector<std::vector<int>> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == nvars) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, d);
  return out;
}

namespace {

// <r> = (r-1)(r-2)...({r}): descending product from r-1 to the fractional part.
Rational descending_bracket(const Rational& r) {
  const Rational f = r.frac();
  Rational acc(1);
  for (Rational v = r - Rational(1); v >= f; v -= Rational(1)) acc *= v;
  return acc;
}

}  // namespace

SparseSeries quartic_closed_form_series(int truncation) {
  if (truncation < 0) throw InvalidInput("truncation must be non-negative");
  const auto monos = monomials_of_degree(4, 4);
  const std::size_t m = monos.size();
  SparseSeries out = SparseSeries::zero(m, truncation);
  std::vector<int> a(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int left) {
    if (slot == m) {
      std::array<Rational, 4> beta;
      for (std::size_t i = 0; i < 4; ++i) {
        long s = 1;
        for (std::size_t j = 0; j < m; ++j) s += static_cast<long>(a[j]) * monos[j][i];
        beta[i] = Rational(Integer(s), Integer(4));
      }
      if (std::any_of(beta.begin(), beta.end(), [](const Rational& b) { return b.is_integer(); })) return;
      if (!(beta[0] + beta[1]).is_integer() || !(beta[2] + beta[3]).is_integer()) return;
      Rational c(1);
      for (const auto& b : beta) c *= descending_bracket(b);
      const Integer sign_exp = beta[0].floor() + beta[2].floor();
      if (mpz_odd_p(sign_exp.get_mpz_t())) c = -c;
      Integer afact = 1;
      for (int e : a) afact *= factorial(static_cast<unsigned long>(e));
      out.add_term(Monomial{std::vector<int>(a)}, c / Rational(afact));
      return;
    }
    for (int e = 0; e <= left; ++e) {
      a[slot] = e;
      rec(slot + 1, left - e);
    }
    a[slot] = 0;
  };
  rec(0, truncation);
  return out;
}

std::vector<BetaIndex> griffiths_basis(int d, int n) {
  if (n < 0 || n % 2) throw InvalidInput("n must be a non-negative even integer");
  if (d < 2) throw InvalidInput("degree d must be at least 2");
  const std::size_t nv = static_cast<std::size_t>(n + 2);
  std::vector<BetaIndex> out;
  std::vector<int> cur(nv, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nv) {
      long s = 0;
      for (int b : cur) s += b + 1;
      if (s % d == 0) out.push_back(BetaIndex{cur, static_cast<int>(s / d)});
      return;
    }
    for (int e = 0; e <= d - 2; ++e) {
      cur[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const BetaIndex& x, const BetaIndex& y) {
    if (x.k != y.k) return x.k < y.k;
    for (std::size_t i = x.beta.size(); i-- > 0;)
      if (x.beta[i] != y.beta[i]) return x.beta[i] > y.beta[i];
    return false;
  });
  return out;
}

std::string DenominatorProfile::to_string() const {
  if (factorization.empty() && unfactored_cofactor == 1) return "1";
  std::string s;
  for (const auto& [p, e] : factorization) {
    if (!s.empty()) s += " * ";
    s += p.get_str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  if (unfactored_cofactor != 1) {
    if (!s.empty()) s += " * ";
    s += "[" + unfactored_cofactor.get_str() + "]";
  }
  return s;
}

DenominatorProfile denominator_profile(const SparseSeries& series, unsigned long trial_bound) {
  DenominatorProfile out;
  for (const auto& [m, c] : series.terms()) out.lcm = lcm(out.lcm, c.denominator());
  Integer rest = out.lcm;
  for (unsigned long p = 2; p <= trial_bound && rest != 1; p = (p == 2 ? 3 : p + 2)) {
    if (Integer(p) * Integer(p) > rest) {
      out.factorization.emplace_back(rest, 1u);
      rest = 1;
      break;
    }
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e) out.factorization.emplace_back(Integer(p), e);
  }
  out.unfactored_cofactor = rest;
  return out;
}

bool steenbrink_hodge_tate(int d, std::span<const int> weights, int n) {
  if (n < 0 || n % 2) throw InvalidInput("n must be a non-negative even integer");
  if (d < 1) throw InvalidInput("degree must be positive");
  if (weights.size() != static_cast<std::size_t>(n + 2))
    throw VariableCountMismatch("expected " + std::to_string(n + 2) + " weights");
  if (weights[0] != 1) throw InvalidInput("the weight v_0 must be 1");
  if (std::any_of(weights.begin(), weights.end(), [](int v) { return v < 1; }))
    throw InvalidInput("weights must be positive");
  long s = 0;
  for (std::size_t i = 1; i < weights.size(); ++i) s += weights[i];
  return static_cast<long>(n) * d <= 2 * s;
}

std::string render_monomial(std::span<const int> exps, std::string_view var_prefix) {
  std::string s;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += std::string(var_prefix) + std::to_string(i);
    if (exps[i] != 1) s += "^" + std::to_string(exps[i]);
  }
  return s.empty() ? "1" : s;
}

FamilyConfig parse_family_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  FamilyConfig cfg;
  try {
    cfg.spec.n = j.at("n").get<int>();
    cfg.spec.d = j.at("d").get<int>();
    cfg.spec.deformations = j.at("I").get<std::vector<std::vector<int>>>();
    cfg.spec.truncation = j.at("truncation").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("config needs integer fields n, d, truncation and a list I: ") + e.what());
  }
  cfg.spec.validate();
  const auto it = j.find("beta");
  if (it == j.end() || (it->is_string() && it->get<std::string>() == "griffiths")) {
    cfg.betas = griffiths_basis(cfg.spec.d, cfg.spec.n);
  } else if (it->is_array()) {
    for (const auto& b : *it) {
      std::vector<int> beta;
      try {
        beta = b.get<std::vector<int>>();
      } catch (const nlohmann::json::exception&) {
        throw InvalidInput("beta entries must be integer lists");
      }
      if (beta.size() != static_cast<std::size_t>(cfg.spec.n + 2)) throw VariableCountMismatch("beta has the wrong length");
      if (std::any_of(beta.begin(), beta.end(), [](int e) { return e < 0; }))
        throw InvalidInput("beta exponents must be non-negative");
      cfg.betas.push_back(make_beta(std::move(beta), cfg.spec.d));
    }
  } else {
    throw InvalidInput("beta must be a list of exponent vectors or \"griffiths\"");
  }
  return cfg;
}

std::string denominator_table(const FamilyConfig& config, unsigned threads) {
  std::string out = "monomial_beta,lcm,factorization\n";
  for (const auto& b : config.betas) {
    const auto prof = denominator_profile(period_series(b, config.spec, threads));
    out += render_monomial(b.beta) + "," + prof.lcm.get_str() + "," + prof.to_string() + "\n";
  }
  return out;
}

}  // namespace hodge
