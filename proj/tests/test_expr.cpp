#include <catch2/catch_amalgamated.hpp>

#include "hodge/errors.hpp"
#include "hodge/expr.hpp"
#include "support.hpp"

using namespace hodge;

namespace {

const PolyContext kXY({"x", "y"});
const PolyContext kX3({"x0", "x1", "x2"}, {"x1"});

}  // namespace

TEST_CASE("parse polynomials", "[expr]") {
  const auto p = parse_polynomial("3/2*x0^2 - x1", kX3);
  CHECK(p.size() == 2);
  CHECK(p.coeff(Monomial{2}) == Rational(Integer(3), Integer(2)));
  CHECK(p.coeff(Monomial{0, 1}) == Rational(-1));
  CHECK(parse_polynomial("x0*x0 - x0^2", kX3).is_zero());
  CHECK(parse_polynomial("  - 2 * ( x0 - 1 ) ", kX3) == parse_polynomial("2 - 2*x0", kX3));
  CHECK(parse_polynomial("x1^-1*x1", kX3) == parse_polynomial("1", kX3));
}

TEST_CASE("parse forms and fields", "[expr]") {
  const auto w = parse_oneform("x*d(y) + y*d(x)", kXY);
  CHECK(w[0] == Polynomial::variable(1, 2));
  CHECK(w[1] == Polynomial::variable(0, 2));
  CHECK(parse_oneform("(y)d(x) + (x)d(y)", kXY) == w);
  const auto v = parse_vector_field("(x)*D(x) - (y)*D(y)", kXY);
  CHECK(v[0] == Polynomial::variable(0, 2));
  CHECK(v[1] == -Polynomial::variable(1, 2));
  CHECK(parse_expr("x*d(y)", kXY).kind() == BasisKind::Differential);
}

TEST_CASE("parse errors", "[expr]") {
  CHECK_THROWS_AS(parse_expr("x^-1", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("x0^-1", kX3), ParseError);
  CHECK_NOTHROW(parse_expr("x1^-1", kX3));
  CHECK_THROWS_AS(parse_expr("z + 1", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("d(x)*D(y)", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("d(x) + D(y)", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("d(x)*d(y)", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("x +", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("(x", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("(x + y)^2", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("1/0", kXY), ParseError);
  CHECK_THROWS_AS(parse_oneform("x", kXY), ParseError);
  CHECK_THROWS_AS(parse_polynomial("d(x)", kXY), ParseError);
  try {
    parse_expr("x + * y", kXY);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("printing", "[expr]") {
  CHECK(print_polynomial(parse_polynomial("3/2*x0^2 - x1", kX3), kX3) == "3/2*x0^2 - x1");
  CHECK(print_polynomial(parse_polynomial("-x1^-1 + 1", kX3), kX3) == "1 - x1^-1");
  CHECK(print_polynomial(Polynomial::zero(3), kX3) == "0");
  CHECK(print_oneform(parse_oneform("x*d(y) + y*d(x)", kXY), kXY) == "(y)*d(x) + (x)*d(y)");
  CHECK(print_vector_field(parse_vector_field("(x)*D(x) - (y)*D(y)", kXY), kXY) == "(x)*D(x) + (-y)*D(y)");
  CHECK(print_polynomial(mod_reduce(parse_polynomial("3*x - 1", kXY), 5), kXY) == "3*x + 4");
}

TEST_CASE("round trip corpus", "[expr][property]") {
  const std::vector<std::string> corpus{
      "0", "1", "-1", "3/2", "x0", "-x0", "x0^2", "3/2*x0^2*x1 - x2", "x0*x1*x2", "x1^-1",
      "x1^-3*x0 + 2", "(x0 + x1)", "(x0 + x1)*(x0 - x1)", "(x0 + 1)*(x0 + 1)*(x0 + 1)", "x0 - x0",
      "-(x0 - x2)", "7*x2^5 - 1/3*x0*x1", "x0^0", "2*3*x1", "1/2 + 1/3", "x0*d(x1)", "x0*d(x1) + x1*d(x0)",
      "(x0^2 - 1)*d(x2)", "d(x0) + d(x1) + d(x2)", "-d(x0)", "3/4*x1^-1*d(x0)", "(x0)d(x1) - (x1)d(x0)",
      "x0*x1*d(x2) - 5*d(x0)", "D(x0)", "x0*D(x0)", "x0*D(x0) - x1*D(x1)", "(x0 + x2)*D(x1) + 2*D(x2)",
      "x1^-1*D(x1)", "-(x0)*D(x0)", "x0*D(x0) + x0*D(x0)", "(1 + x0)*(1 - x0)*D(x2)", "2/3*x0^3*x1^2*x2",
      "x0 + x1 + x2 + 1", "(x0*x1 - x2)*d(x0)", "x2*x1*x0", "1 + d(x0)", "x0 - 1 + x1*d(x2)",
      "(x0 - x1)*(x1 - x2)*(x2 - x0)", "10/4", "-6/8*x0", "x1^2*x1^-2", "x0^12", "((x0))", "(-x0)*(-x1)",
      "d(x1)*x0*x2", "D(x2)*x0^2 - D(x0)", "(3)*(x0)*(1/3)"};
  REQUIRE(corpus.size() >= 50);
  for (const auto& text : corpus) {
    const ExprAST e = parse_expr(text, kX3);
    const std::string printed = print_expr(e, kX3);
    CAPTURE(text, printed);
    CHECK(parse_expr(printed, kX3) == e);
    CHECK(print_expr(parse_expr(printed, kX3), kX3) == printed);
  }
}

TEST_CASE("round trip on random objects", "[expr][property]") {
  std::mt19937 rng(55);
  const PolyContext ctx({"a", "b", "c"});
  for (int i = 0; i < 100; ++i) {
    const auto p = hodge::testing::random_poly(rng, 3, 4, 5);
    CHECK(parse_polynomial(print_polynomial(p, ctx), ctx) == p);
    const auto w = hodge::testing::random_oneform(rng, 3, 2);
    CHECK(parse_oneform(print_oneform(w, ctx), ctx) == w);
    const auto v = hodge::testing::random_field(rng, 3, 2);
    CHECK(parse_vector_field(print_vector_field(v, ctx), ctx) == v);
    CHECK(to_expr(w, ctx) == parse_expr(print_oneform(w, ctx), ctx));
  }
}

TEST_CASE("form matrices", "[expr]") {
  const auto b = parse_form_matrix({{"0", "x*d(y)"}, {"d(x)", "0"}}, kXY);
  CHECK(b.rows() == 2);
  CHECK(b.parts[1](0, 1) == Polynomial::variable(0, 2));
  CHECK(b.parts[0](1, 0) == Polynomial(Rational(1), 2));
  CHECK(b.parts[0](0, 0).is_zero());
  CHECK_THROWS_AS(parse_form_matrix({{"0", "0"}, {"0"}}, kXY), InvalidInput);
}
