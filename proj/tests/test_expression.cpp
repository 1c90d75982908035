#include <doctest.h>

#include <cmath>

#include "diractk/error.hpp"
#include "diractk/expression.hpp"

using namespace dtk;

TEST_CASE("basic evaluation") {
    CHECK(Expression::parse("tanh(x)").eval(0.0) == 0.0);
    CHECK(Expression::parse("x^2 + 3*x").eval(2.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(Expression::parse("-(x+1)/2*cos(2*(x*(x-2)/4))").eval(0.0) ==
          doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(Expression::parse("(x+1)/2*sin(2*(x*(x-2)/4))").eval(0.0) == 0.0);
}

TEST_CASE("precedence and unary minus") {
    CHECK(Expression::parse("2+3*4").eval(0.0) == 14.0);
    CHECK(Expression::parse("2*3^2").eval(0.0) == 18.0);
    CHECK(Expression::parse("2^3^2").eval(0.0) == 512.0); // right associative
    CHECK(Expression::parse("-x^2").eval(3.0) == -9.0);
    CHECK(Expression::parse("(-x)^2").eval(3.0) == 9.0);
    CHECK(Expression::parse("--x").eval(5.0) == 5.0);
    CHECK(Expression::parse("2^-1").eval(0.0) == 0.5);
}

TEST_CASE("functions") {
    CHECK(Expression::parse("sech(x)").eval(1.0) ==
          doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-15));
    CHECK(Expression::parse("sqrt(abs(x))").eval(-4.0) == 2.0);
    CHECK(Expression::parse("exp(log(x))").eval(2.5) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(Expression::parse("sin(pi*x)").eval(0.5) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(Expression::parse(""), ParseError);
    CHECK_THROWS_AS(Expression::parse("tanh("), ParseError);
    CHECK_THROWS_AS(Expression::parse("1 + * 2"), ParseError);
    CHECK_THROWS_AS(Expression::parse("foo(x)"), ParseError);
    CHECK_THROWS_AS(Expression::parse("x y"), ParseError);
    try {
        Expression::parse("1 + (2");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.pos == 6);
    }
}

TEST_CASE("runtime domain errors") {
    const Expression bad_log = Expression::parse("log(x)");
    CHECK_THROWS_AS(bad_log.eval(-1.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("sqrt(x)").eval(-1.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("1/x").eval(0.0), EvalError);
}
