#include <cmath>

#include "doctest.h"
#include "ermakov/errors.hpp"
#include "ermakov/parse.hpp"
#include "ermakov/sampling.hpp"

using namespace ermakov;

TEST_SUITE_BEGIN("parse");

TEST_CASE("standard infix with powers, functions, pi") {
  SymbolTable tab;
  Jet x = tab.jet("x");
  Binding b(tab);
  b.set(x.coord, 2.0);

  CHECK(evaluate(parse_expression("1/x^2", tab), b) == doctest::Approx(0.25));
  CHECK(evaluate(parse_expression("x^(-2)", tab), b) == doctest::Approx(0.25));
  CHECK(evaluate(parse_expression("sin(pi/2) + cos(0)", tab), b) == doctest::Approx(2.0));
  CHECK(evaluate(parse_expression("-x + 3*x", tab), b) == doctest::Approx(4.0));
  CHECK(evaluate(parse_expression("x^(1/2)", tab), b) == doctest::Approx(std::sqrt(2.0)));
  CHECK(evaluate(parse_expression("2e-3 * x", tab), b) == doctest::Approx(4e-3));
}

TEST_CASE("round-trip: to_string output parses back to an equal tree") {
  SymbolTable tab;
  Jet rho = tab.jet("rho");
  Jet theta = tab.jet("theta");
  Symbol v0 = tab.parameter("V0");
  Expr e = 0.5 * pow(Expr(rho.vel), 2) + Expr(v0) * pow(cos(Expr(theta.coord)), -2) -
           1.5 * sin(3.0 * Expr(theta.coord));
  Expr back = parse_expression(to_string(e), tab);
  CHECK(structurally_equal(e, back));
}

TEST_CASE("errors carry the offending position") {
  SymbolTable tab;
  tab.jet("x");

  SUBCASE("unknown symbol") {
    try {
      parse_expression("x + nope", tab);
      FAIL("expected ParseError");
    } catch (const ParseError& err) {
      CHECK(err.position == 4);
    }
  }

  SUBCASE("unbalanced parenthesis") {
    CHECK_THROWS_AS(parse_expression("sin(x", tab), ParseError);
  }

  SUBCASE("symbolic exponent rejected") {
    CHECK_THROWS_AS(parse_expression("x^x", tab), ParseError);
  }

  SUBCASE("trailing garbage") {
    CHECK_THROWS_AS(parse_expression("x + 1 )", tab), ParseError);
  }
}

TEST_CASE("auto-parameter mode registers unknown identifiers") {
  SymbolTable tab;
  tab.jet("x");
  ParseOptions opts;
  opts.auto_parameters = true;
  Expr e = parse_expression("V0 / x^2", tab, opts);
  REQUIRE(tab.find("V0").has_value());
  CHECK(tab.at("V0").role() == SymbolRole::Parameter);
  Binding b(tab);
  b.set("x", 2.0);
  b.set("V0", 8.0);
  CHECK(evaluate(e, b) == doctest::Approx(2.0));
}

TEST_SUITE_END();
