#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gstab/expression.hpp"
#include "gstab/system.hpp"

using namespace gstab;
using Catch::Matchers::WithinAbs;

TEST_CASE("expressions reproduce the builtin maps") {
  Expression e1 = Expression::parse("sin(x)*(tanh(x)-x)", 1);
  DiscreteSystem s1 = make_sine_tanh();
  for (double v : {-0.9, -0.2, 0.1, 0.77}) {
    CHECK_THAT(e1.eval(StateVector{v}), WithinAbs(step(s1, StateVector{v})[0],
                                                  1e-15));
  }

  Expression e2 = Expression::parse("sin(x1)/(2*cos(x1/3)^3)", 1);
  DiscreteSystem s2 = make_sine_sec_cubed();
  for (double v : {-2.5, 0.4, 1.3}) {
    CHECK_THAT(e2.eval(StateVector{v}), WithinAbs(step(s2, StateVector{v})[0],
                                                  1e-15));
  }

  Expression e3a = Expression::parse("x*y*exp(-y^2)", 2);
  Expression e3b = Expression::parse("0.3*x", 2);
  DiscreteSystem s3 = make_gauss_product(0.3);
  StateVector p{1.2, -0.4};
  StateVector fp = step(s3, p);
  CHECK_THAT(e3a.eval(p), WithinAbs(fp[0], 1e-15));
  CHECK_THAT(e3b.eval(p), WithinAbs(fp[1], 1e-15));

  Expression e4 =
      Expression::parse("norm()^2/(1+abs(norm()-e^0))*x1", 1);
  DiscreteSystem s4 = make_norm_shell(0.0, NormShellMap::Quadratic);
  for (double v : {0.5, -0.25, 1.5}) {
    CHECK_THAT(e4.eval(StateVector{v}), WithinAbs(step(s4, StateVector{v})[0],
                                                  1e-14));
  }
}

TEST_CASE("numbers, constants, precedence") {
  CHECK(Expression::parse("2+3*4^2", 1).eval(StateVector{0.0}) == 50.0);
  CHECK_THAT(Expression::parse("pi", 1).eval(StateVector{0.0}),
             WithinAbs(3.14159265358979323846, 1e-15));
  CHECK_THAT(Expression::parse("ln(e)", 1).eval(StateVector{0.0}),
             WithinAbs(1.0, 1e-15));
  CHECK(Expression::parse("-x^2", 1).eval(StateVector{3.0}) == -9.0);
  CHECK(Expression::parse("(-x)^2", 1).eval(StateVector{3.0}) == 9.0);
  CHECK(Expression::parse("norm(3,4)", 1).eval(StateVector{0.0}) == 5.0);
  CHECK(Expression::parse("norm()", 2).eval(StateVector{3.0, 4.0}) == 5.0);
  CHECK(Expression::parse("x2", 2).eval(StateVector{1.0, 7.0}) == 7.0);
  CHECK(Expression::parse("tan(0)", 1).eval(StateVector{0.0}) == 0.0);
}

TEST_CASE("parse errors carry a column") {
  using Catch::Matchers::ContainsSubstring;
  CHECK_THROWS_MATCHES(Expression::parse("sin(", 1), ConfigError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("column")));
  CHECK_THROWS_AS(Expression::parse("foo(x)", 1), ConfigError);
  CHECK_THROWS_AS(Expression::parse("x3", 2), ConfigError);
  CHECK_THROWS_AS(Expression::parse("1 2", 1), ConfigError);
  CHECK_THROWS_AS(Expression::parse("y", 1), ConfigError);
  CHECK_THROWS_AS(Expression::parse("sin(x, x)", 1), ConfigError);
}

TEST_CASE("evaluation rejects the wrong dimension") {
  Expression e = Expression::parse("x1+x2", 2);
  CHECK_THROWS_AS(e.eval(StateVector{1.0}), DimensionMismatch);
}
