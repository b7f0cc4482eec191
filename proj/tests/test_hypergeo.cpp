#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hodge/errors.hpp"
#include "hodge/fermat.hpp"
#include "hodge/hypergeo.hpp"

using namespace hodge;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }
const HypParams kHalf{q(1, 2), q(1, 2), Rational(1)};

}  // namespace

TEST_CASE("exact coefficients", "[hypergeo]") {
  CHECK(hyp2f1_coefficients(kHalf, 3) == std::vector<Rational>{Rational(1), q(1, 4), q(9, 64)});
  CHECK(hyp2f1_coefficients(HypParams{q(2, 3), q(-5, 7), q(3, 11)}, 1) == std::vector<Rational>{Rational(1)});
  CHECK(hyp2f1_coefficients(HypParams{Rational(1), Rational(1), Rational(1)}, 4) == std::vector<Rational>(4, Rational(1)));
  CHECK_THROWS_AS(hyp2f1_coefficients(HypParams{Rational(1), Rational(1), Rational(-2)}, 4), InvalidInput);
}

TEST_CASE("recurrence matches the Pochhammer formula", "[hypergeo][property]") {
  const std::vector<HypParams> params{kHalf, {q(1, 3), q(2, 3), Rational(1)}, {q(-3, 2), q(5, 4), q(7, 3)}};
  for (const auto& p : params) {
    const auto c = hyp2f1_coefficients(p, 40);
    for (unsigned long n = 0; n < 40; ++n)
      CHECK(c[n] == pochhammer(p.a, n) * pochhammer(p.b, n) / (pochhammer(p.c, n) * Rational(factorial(n))));
  }
}

TEST_CASE("tail bound is sound", "[hypergeo][property]") {
  const Hyp2F1 f(kHalf);
  for (double z : {0.1, 0.5, 0.9, 0.99}) {
    for (int d : {10, 50, 200, 800}) {
      const auto a = f.partial(z, d), b = f.partial(z, 2 * d);
      CHECK(std::abs(b.sum - a.sum) <= a.tail_bound * (1 + 1e-12) + 1e-15);
    }
    const auto v = f.eval(z, 1e-13);
    CHECK(v.tail_bound < 1e-13);
    CHECK(std::abs(f.partial(z, 4000).sum - v.sum) < 1e-12);
  }
  // Closed form 2F1(1,1;2;z) = -log(1-z)/z.
  const Hyp2F1 g(HypParams{Rational(1), Rational(1), Rational(2)});
  for (double z : {0.2, 0.7, 0.95}) CHECK(std::abs(g.eval(z, 1e-14).sum + std::log1p(-z) / z) < 1e-12);
  CHECK_THROWS_AS(f.eval(1.0, 1e-8), OutOfDomain);
  CHECK_THROWS_AS(Hyp2F1(kHalf, 10).eval(0.9, 1e-12), ResourceLimit);
}

TEST_CASE("tau on the imaginary axis", "[hypergeo]") {
  CHECK(std::abs(tau_of_t(0.5, 1e-14) - 1.0) < 1e-12);
  CHECK(std::abs(tau_of_t(0.97, 1e-14) * tau_of_t(0.03, 1e-14) - 1.0) < 1e-8);
  CHECK_THROWS_AS(tau_of_t(0.005, 1e-10), OutOfDomain);
  CHECK_THROWS_AS(tau_of_t(0.995, 1e-10), OutOfDomain);
  double prev = tau_of_t(0.01, 1e-14);
  CHECK(prev > 2.0);
  for (int i = 1; i <= 98; ++i) {
    const double t = 0.01 + 0.01 * i;
    const double v = tau_of_t(t, 1e-14);
    CHECK(v < prev);
    CHECK(std::abs(v * tau_of_t(1 - t, 1e-14) - 1) < 1e-8);
    prev = v;
  }
}

TEST_CASE("tau inversion", "[hypergeo]") {
  CHECK(std::abs(invert_tau(1.0, 1e-12) - 0.5) < 1e-10);
  CHECK(std::abs(invert_tau(2.0, 1e-12) - (17 - 12 * std::sqrt(2.0))) < 1e-9);
  CHECK(std::abs(invert_tau(0.5, 1e-12) - (12 * std::sqrt(2.0) - 16)) < 1e-9);
  CHECK(std::abs(invert_tau(0.5, 1e-12) - (1 - (17 - 12 * std::sqrt(2.0)))) < 1e-9);
  for (double t : {0.02, 0.1, 0.33, 0.5, 0.77, 0.98}) {
    const double tol = 1e-11;
    CHECK(std::abs(invert_tau(tau_of_t(t, 1e-15), tol) - t) < 10 * tol);
  }
  CHECK_THROWS_AS(invert_tau(10.0, 1e-10), TargetOutOfRange);
  CHECK_THROWS_AS(invert_tau(0.1, 1e-10), TargetOutOfRange);
}

TEST_CASE("isogeny combination", "[hypergeo]") {
  for (double t : {0.05, 0.3, 0.5, 0.81}) CHECK(g_n(t, t, 1, 1e-14) == 0.0);
  const double t2 = invert_tau(0.5, 1e-13);
  CHECK(std::abs(g_n(0.5, t2, 2, 1e-14)) < 1e-8);
  const double f = hyp_half(0.5, 1e-15);
  CHECK(std::abs(g_n(0.5, 0.5, 2, 1e-15) + f * f) < 1e-12);
  CHECK_THROWS_AS(g_n(0.0, 0.5, 2, 1e-10), OutOfDomain);
}

TEST_CASE("diagonal identity holds at the series level", "[hypergeo]") {
  // With one truncated series F_D, F_D(1-t) F_D(t) - F_D(1-t) F_D(t) vanishes identically in exact arithmetic.
  const auto c = hyp2f1_coefficients(kHalf, 30);
  const auto eval = [&](const Rational& z) {
    Rational acc(0), zn(1);
    for (const auto& ci : c) {
      acc += ci * zn;
      zn *= z;
    }
    return acc;
  };
  for (const Rational& t : {q(1, 10), q(1, 2), q(7, 9)}) CHECK(eval(Rational(1) - t) * eval(t) - eval(Rational(1) - t) * eval(t) == Rational(0));
}

TEST_CASE("locus sampling", "[hypergeo]") {
  const auto grid = uniform_grid(20);
  REQUIRE(grid.size() == 20);
  CHECK(grid.front() == 0.01);
  CHECK(std::abs(grid.back() - 0.99) < 1e-15);

  const auto one = sample_locus(1, grid, 1e-8);
  CHECK(one.skipped.empty());
  for (const auto& p : one.points) CHECK(std::abs(p.t1 - p.t2) < 1e-8);

  const auto two = sample_locus(2, grid, 1e-8);
  CHECK(two.points.size() + two.skipped.size() == 20);
  CHECK(two.points.size() >= 10);
  for (const auto& p : two.points) {
    CHECK(p.residual < 1e-8);
    CHECK_FALSE(p.flagged);
    CHECK(std::abs(tau_of_t(p.t1, 1e-14) - 2 * tau_of_t(p.t2, 1e-14)) < 1e-8);
  }
  const std::vector<double> half{0.5};
  const auto w = sample_locus(2, half, 1e-8);
  REQUIRE(w.points.size() == 1);
  CHECK(std::abs(w.points[0].t2 - 0.97056) < 1e-5);
  CHECK_THROWS_AS(sample_locus(0, grid, 1e-8), InvalidInput);
}
