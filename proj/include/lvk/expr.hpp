#pragma once

// Expression syntax shared by system files, Darboux functions and 1-forms:
// + - * / ^ ( ), integer / fraction / finite-decimal literals, identifiers
// and exp(...). Exponents are integer literals (optionally negative) or a
// parenthesized rational such as ^(1/2).

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvk/ratfunc.hpp"
#include "lvk/rational.hpp"

namespace lvk {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { number, variable, add, sub, mul, div, neg, pow, exp };

  Kind kind = Kind::number;
  Rational value;      ///< number literal, or exponent for pow
  std::string name;    ///< variable
  ExprPtr lhs;
  ExprPtr rhs;
  int line = 1;
  int column = 1;
};

/// Parses one expression. `line` and `column` locate text[0] for errors.
ExprPtr parse_expression(std::string_view text, int line = 1, int column = 1);

/// Parses comma-separated expressions at nesting depth zero.
std::vector<ExprPtr> parse_expression_list(std::string_view text, int line = 1,
                                           int column = 1);

/// Identifiers in order of first appearance (exp excluded).
std::vector<std::string> identifiers(const Expr& e);

struct EvalOptions {
  int max_degree = 64;
};

/// Polynomial reading: no division except by nonzero constants, no negative
/// or fractional exponents, no exp.
MultiPoly eval_polynomial(const Expr& e, std::span<const std::string> names,
                          const EvalOptions& opts = {});

/// Rational-function reading: integer exponents only, no exp.
RatFunc eval_ratfunc(const Expr& e, std::span<const std::string> names,
                     const EvalOptions& opts = {});

/// Reads LVK_MAX_DEGREE (default 64).
int max_degree_from_env();

}  // namespace lvk
