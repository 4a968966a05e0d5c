#include "ratiosec/expression.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace ratiosec {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::runtime_error(fmt::format("at offset {}: {}", offset, message)), offset_(offset) {}

struct FunctionInfo {
  std::string_view name;
  int fn;
  std::size_t min_args;
  std::size_t max_args;  // 0 = unbounded
};

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression run() {
    expr_.source_ = std::string(text_);
    expr_.root_ = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail(fmt::format("unexpected '{}', expected operator or end of input", text_[pos_]));
    return std::move(expr_);
  }

 private:
  using Op = Expression::Op;
  using Fn = Expression::Fn;

  static constexpr std::array<FunctionInfo, 10> kFunctions{{
      {"sin", static_cast<int>(Fn::sin), 1, 1},
      {"cos", static_cast<int>(Fn::cos), 1, 1},
      {"exp", static_cast<int>(Fn::exp), 1, 1},
      {"abs", static_cast<int>(Fn::abs), 1, 1},
      {"sqrt", static_cast<int>(Fn::sqrt), 1, 1},
      {"cosh", static_cast<int>(Fn::cosh), 1, 1},
      {"sinh", static_cast<int>(Fn::sinh), 1, 1},
      {"pow", static_cast<int>(Fn::pow), 2, 2},
      {"max", static_cast<int>(Fn::max), 2, 0},
      {"min", static_cast<int>(Fn::min), 2, 0},
  }};

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(fmt::format("expected '{}', found end of input", c));
      fail(fmt::format("expected '{}', found '{}'", c, text_[pos_]));
    }
  }

  int add(Expression::Node node) {
    expr_.nodes_.push_back(std::move(node));
    return static_cast<int>(expr_.nodes_.size() - 1);
  }

  int binary(Op op, int lhs, int rhs) { return add({op, 0.0, Fn::sin, {lhs, rhs}}); }

  int parse_sum() {
    int lhs = parse_product();
    while (true) {
      if (accept('+')) {
        lhs = binary(Op::add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = binary(Op::sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  int parse_product() {
    int lhs = parse_unary();
    while (true) {
      if (accept('*')) {
        lhs = binary(Op::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Op::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (accept('-')) return add({Op::neg, 0.0, Fn::sin, {parse_unary()}});
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    if (accept('^')) return binary(Op::pow, base, parse_unary());
    return base;
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected number, 'x', function call or '(', found end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(fmt::format("unexpected '{}', expected number, 'x', function call or '('", c));
  }

  int parse_number() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text_.data() + begin, text_.data() + pos_, value);
    if (ec != std::errc() || end != text_.data() + pos_) {
      const std::string_view bad = text_.substr(begin, pos_ - begin);
      pos_ = begin;
      fail(fmt::format("malformed number '{}'", bad));
    }
    return add({Op::number, value, Fn::sin, {}});
  }

  int parse_identifier() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(begin, pos_ - begin);
    if (name == "x") return add({Op::variable, 0.0, Fn::sin, {}});

    const auto info = std::find_if(kFunctions.begin(), kFunctions.end(),
                                   [&](const FunctionInfo& f) { return f.name == name; });
    if (info == kFunctions.end()) {
      pos_ = begin;
      fail(fmt::format("unknown identifier '{}'", name));
    }
    expect('(');
    std::vector<int> args{parse_sum()};
    while (accept(',')) args.push_back(parse_sum());
    expect(')');
    if (args.size() < info->min_args || (info->max_args != 0 && args.size() > info->max_args)) {
      pos_ = begin;
      if (info->max_args == info->min_args) {
        fail(fmt::format("{}() takes {} argument(s), got {}", name, info->min_args, args.size()));
      }
      fail(fmt::format("{}() takes at least {} arguments, got {}", name, info->min_args, args.size()));
    }
    return add({Op::call, 0.0, static_cast<Fn>(info->fn), std::move(args)});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Expression expr_;
};

Expression Expression::parse(std::string_view text) { return ExpressionParser(text).run(); }

double Expression::operator()(double x) const {
  const double y = eval(root_, x);
  if (!std::isfinite(y)) {
    throw DomainError(fmt::format("'{}' is not finite at x = {}", source_, x));
  }
  return y;
}

namespace {

// squares as a product, the way compiled std::pow(x, 2.0) is folded
double power(double base, double exponent) {
  return exponent == 2.0 ? base * base : std::pow(base, exponent);
}

}  // namespace

double Expression::eval(int index, double x) const {
  const Node& n = nodes_[static_cast<std::size_t>(index)];
  auto arg = [&](std::size_t i) { return eval(n.args[i], x); };
  switch (n.op) {
    case Op::number: return n.value;
    case Op::variable: return x;
    case Op::neg: return -arg(0);
    case Op::add: return arg(0) + arg(1);
    case Op::sub: return arg(0) - arg(1);
    case Op::mul: return arg(0) * arg(1);
    case Op::div: return arg(0) / arg(1);
    case Op::pow: return power(arg(0), arg(1));
    case Op::call: break;
  }
  switch (n.fn) {
    case Fn::sin: return std::sin(arg(0));
    case Fn::cos: return std::cos(arg(0));
    case Fn::exp: return std::exp(arg(0));
    case Fn::abs: return std::abs(arg(0));
    case Fn::sqrt: return std::sqrt(arg(0));
    case Fn::cosh: return std::cosh(arg(0));
    case Fn::sinh: return std::sinh(arg(0));
    case Fn::pow: return power(arg(0), arg(1));
    case Fn::max:
    case Fn::min: {
      double acc = arg(0);
      for (std::size_t i = 1; i < n.args.size(); ++i) {
        acc = n.fn == Fn::max ? std::max(acc, arg(i)) : std::min(acc, arg(i));
      }
      return acc;
    }
  }
  return 0.0;
}

}  // namespace ratiosec
