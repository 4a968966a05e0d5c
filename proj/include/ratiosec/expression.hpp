#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ratiosec {

/// Syntax or arity error; `offset` is the byte offset into the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation produced a non-finite value (log of a negative, 1/0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Arithmetic expression in one variable `x`.
///
/// Grammar: + - * / with the usual precedence, unary minus, right-associative
/// ^ binding tighter than unary minus, parentheses, numeric literals and the
/// functions sin cos exp abs sqrt cosh sinh (one argument), pow (two) and
/// max min (two or more).
class Expression {
 public:
  static Expression parse(std::string_view text);

  /// Throws DomainError when the result is not finite.
  double operator()(double x) const;

  const std::string& source() const noexcept { return source_; }

 private:
  friend class ExpressionParser;

  enum class Op { number, variable, neg, add, sub, mul, div, pow, call };
  enum class Fn { sin, cos, exp, abs, sqrt, cosh, sinh, pow, max, min };

  struct Node {
    Op op;
    double value = 0.0;
    Fn fn = Fn::sin;
    std::vector<int> args;
  };

  double eval(int node, double x) const;

  std::string source_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace ratiosec
