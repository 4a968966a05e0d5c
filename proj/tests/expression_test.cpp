#include <cmath>
#include <string>

#include "doctest.h"
#include "ratiosec/benchsuite.hpp"
#include "ratiosec/expression.hpp"

using namespace ratiosec;

namespace {

std::size_t error_offset(const std::string& text) {
  try {
    Expression::parse(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("evaluation examples") {
  CHECK(Expression::parse("1.2+abs(x-1)")(3.0) == doctest::Approx(3.2));
  CHECK(Expression::parse("max(4*cos(x),1)")(0.0) == 4.0);
  CHECK(Expression::parse("2^3^2")(0.0) == 512.0);
}

TEST_CASE("precedence and unary minus") {
  CHECK(Expression::parse("-x^2")(3.0) == -9.0);
  CHECK(Expression::parse("1 - 2 - 3")(0.0) == -4.0);
  CHECK(Expression::parse("8 / 4 / 2")(0.0) == 1.0);
  CHECK(Expression::parse("2 + 3 * x")(2.0) == 8.0);
  CHECK(Expression::parse("(2 + 3) * x")(2.0) == 10.0);
  CHECK(Expression::parse("min(x, 3, -1, 7)")(0.5) == -1.0);
  CHECK(Expression::parse("pow(x, 0.5)")(16.0) == 4.0);
  CHECK(Expression::parse("1.5e2")(0.0) == 150.0);
  CHECK(Expression::parse(" sqrt( x ) ").source() == " sqrt( x ) ");
}

TEST_CASE("syntax errors carry offsets") {
  CHECK(error_offset("1+") == 2);
  CHECK(error_offset("2*)") == 2);
  CHECK(error_offset("x x") == 2);
  CHECK(error_offset("(x+1") == 4);
  CHECK(error_offset("") == 0);
  CHECK(error_offset("1+y") == 2);
  CHECK(error_offset("x+1") == std::string::npos);
}

TEST_CASE("unknown functions and arity") {
  CHECK_THROWS_AS(Expression::parse("tan(x)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("sin(x, 1)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("pow(x)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("max(x)"), ParseError);
  CHECK_NOTHROW(Expression::parse("max(x, 1, 2, 3, 4)"));
}

TEST_CASE("non-finite results raise") {
  const auto e = Expression::parse("1/x");
  CHECK_THROWS_AS(e(0.0), DomainError);
  CHECK_THROWS_AS(Expression::parse("sqrt(x)")(-1.0), DomainError);
  CHECK(e(4.0) == 0.25);
}

TEST_CASE("suite expressions match the compiled evaluators bit for bit") {
  for (const BenchFunction& fn : table3_all()) {
    const auto e = Expression::parse(fn.expression);
    const double lo = fn.interval.lo();
    const double step = fn.interval.length() / 999;
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
      const double x = i == 999 ? fn.interval.hi() : lo + step * i;
      if (e(x) != fn.evaluator(x)) ++mismatches;
    }
    CAPTURE(fn.id);
    CHECK(mismatches == 0);
  }
}
