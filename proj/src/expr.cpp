#include "lvk/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "lvk/errors.hpp"

namespace lvk {

namespace {

enum class Tok { number, ident, op, lparen, rparen, comma, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line, int column)
      : text_(text), line_(line), column_(column) {
    advance();
  }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
    current_ = Token{Tok::end, "", line_, column_};
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        bump();
      }
      current_.kind = Tok::number;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        bump();
      }
      current_.kind = Tok::ident;
    } else if (std::string_view("+-*/^").find(c) != std::string_view::npos) {
      bump();
      current_.kind = Tok::op;
    } else if (c == '(') {
      bump();
      current_.kind = Tok::lparen;
    } else if (c == ')') {
      bump();
      current_.kind = Tok::rparen;
    } else if (c == ',') {
      bump();
      current_.kind = Tok::comma;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    }
    current_.text = std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
  Token current_;
};

ExprPtr node(Expr::Kind kind, const Token& at, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->line = at.line;
  e->column = at.column;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

class Parser {
 public:
  explicit Parser(Lexer& lex) : lex_(lex) {}

  ExprPtr expression() {
    ExprPtr left = term();
    while (is_op("+") || is_op("-")) {
      Token op = lex_.take();
      ExprPtr right = term();
      left = node(op.text == "+" ? Expr::Kind::add : Expr::Kind::sub, op, left, right);
    }
    return left;
  }

  void expect_end() {
    if (lex_.peek().kind != Tok::end) fail("unexpected '" + lex_.peek().text + "'");
  }

  bool at_comma() const { return lex_.peek().kind == Tok::comma; }
  bool at_end() const { return lex_.peek().kind == Tok::end; }
  void skip() { lex_.take(); }

 private:
  bool is_op(const char* s) const {
    return lex_.peek().kind == Tok::op && lex_.peek().text == s;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = lex_.peek();
    throw ParseError(t.kind == Tok::end ? "unexpected end of input" : what, t.line, t.column);
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (is_op("*") || is_op("/")) {
      Token op = lex_.take();
      ExprPtr right = unary();
      left = node(op.text == "*" ? Expr::Kind::mul : Expr::Kind::div, op, left, right);
    }
    return left;
  }

  ExprPtr unary() {
    if (is_op("-")) {
      Token op = lex_.take();
      return node(Expr::Kind::neg, op, unary());
    }
    if (is_op("+")) {
      lex_.take();
      return unary();
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!is_op("^")) return base;
    Token op = lex_.take();
    auto e = std::make_shared<Expr>(*node(Expr::Kind::pow, op, base));
    e->value = exponent();
    if (is_op("^")) fail("chained exponents need parentheses");
    return e;
  }

  Rational exponent() {
    bool paren = lex_.peek().kind == Tok::lparen;
    if (paren) lex_.take();
    bool negative = false;
    if (is_op("-")) {
      lex_.take();
      negative = true;
    }
    if (lex_.peek().kind != Tok::number) fail("exponent must be an integer or (p/q)");
    Token num = lex_.take();
    if (num.text.find('.') != std::string::npos) {
      throw ParseError("exponent must be an integer or (p/q)", num.line, num.column);
    }
    Rational value(Integer(num.text, 10));
    if (paren && is_op("/")) {
      lex_.take();
      if (lex_.peek().kind != Tok::number) fail("expected denominator");
      Token den = lex_.take();
      Integer d(den.text, 10);
      if (den.text.find('.') != std::string::npos || d == 0) {
        throw ParseError("bad exponent denominator", den.line, den.column);
      }
      value = Rational(value.get_num(), d);
      value.canonicalize();
    }
    if (paren) {
      if (lex_.peek().kind != Tok::rparen) fail("expected ')'");
      lex_.take();
    }
    return negative ? Rational(-value) : value;
  }

  ExprPtr atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::number: {
        Token num = lex_.take();
        auto e = std::make_shared<Expr>(*node(Expr::Kind::number, num));
        try {
          e->value = parse_rational(num.text);
        } catch (const Error&) {
          throw ParseError("malformed number '" + num.text + "'", num.line, num.column);
        }
        return e;
      }
      case Tok::ident: {
        Token id = lex_.take();
        if (id.text == "exp" && lex_.peek().kind == Tok::lparen) {
          lex_.take();
          ExprPtr inner = expression();
          if (lex_.peek().kind != Tok::rparen) fail("expected ')'");
          lex_.take();
          return node(Expr::Kind::exp, id, inner);
        }
        if (lex_.peek().kind == Tok::lparen) {
          throw ParseError("unknown function '" + id.text + "'", id.line, id.column);
        }
        auto e = std::make_shared<Expr>(*node(Expr::Kind::variable, id));
        e->name = id.text;
        return e;
      }
      case Tok::lparen: {
        lex_.take();
        ExprPtr inner = expression();
        if (lex_.peek().kind != Tok::rparen) fail("expected ')'");
        lex_.take();
        return inner;
      }
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  Lexer& lex_;
};

[[noreturn]] void fail_at(const Expr& e, const std::string& what) {
  throw ParseError(what, e.line, e.column);
}

std::size_t variable_index(const Expr& e, std::span<const std::string> names) {
  auto it = std::find(names.begin(), names.end(), e.name);
  if (it == names.end()) fail_at(e, "unknown variable '" + e.name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

int integer_exponent(const Expr& e) {
  if (e.value.get_den() != 1) fail_at(e, "fractional exponent not allowed here");
  if (!e.value.get_num().fits_sint_p()) fail_at(e, "exponent too large");
  return static_cast<int>(e.value.get_num().get_si());
}

void check_degree(const Expr& e, int degree, const EvalOptions& opts) {
  if (degree > opts.max_degree) {
    throw DegreeLimitExceeded(std::to_string(e.line) + ":" + std::to_string(e.column) +
                              ": degree " + std::to_string(degree) + " exceeds limit " +
                              std::to_string(opts.max_degree));
  }
}

}  // namespace

ExprPtr parse_expression(std::string_view text, int line, int column) {
  Lexer lex(text, line, column);
  Parser p(lex);
  ExprPtr e = p.expression();
  p.expect_end();
  return e;
}

std::vector<ExprPtr> parse_expression_list(std::string_view text, int line, int column) {
  Lexer lex(text, line, column);
  Parser p(lex);
  std::vector<ExprPtr> out;
  out.push_back(p.expression());
  while (p.at_comma()) {
    p.skip();
    out.push_back(p.expression());
  }
  p.expect_end();
  return out;
}

std::vector<std::string> identifiers(const Expr& e) {
  std::vector<std::string> out;
  auto visit = [&](auto&& self, const Expr& x) -> void {
    if (x.kind == Expr::Kind::variable &&
        std::find(out.begin(), out.end(), x.name) == out.end()) {
      out.push_back(x.name);
    }
    if (x.lhs) self(self, *x.lhs);
    if (x.rhs) self(self, *x.rhs);
  };
  visit(visit, e);
  return out;
}

MultiPoly eval_polynomial(const Expr& e, std::span<const std::string> names,
                          const EvalOptions& opts) {
  const std::size_t n = names.size();
  switch (e.kind) {
    case Expr::Kind::number:
      return MultiPoly::constant(n, e.value);
    case Expr::Kind::variable:
      return MultiPoly::variable(n, variable_index(e, names));
    case Expr::Kind::add:
      return eval_polynomial(*e.lhs, names, opts) + eval_polynomial(*e.rhs, names, opts);
    case Expr::Kind::sub:
      return eval_polynomial(*e.lhs, names, opts) - eval_polynomial(*e.rhs, names, opts);
    case Expr::Kind::neg:
      return -eval_polynomial(*e.lhs, names, opts);
    case Expr::Kind::mul: {
      MultiPoly r = eval_polynomial(*e.lhs, names, opts) * eval_polynomial(*e.rhs, names, opts);
      check_degree(e, r.total_degree(), opts);
      return r;
    }
    case Expr::Kind::div: {
      MultiPoly d = eval_polynomial(*e.rhs, names, opts);
      if (!d.is_constant()) fail_at(e, "division by a non-constant is not polynomial");
      if (d.is_zero()) fail_at(e, "division by zero");
      Rational inv = 1 / d.constant_term();
      return eval_polynomial(*e.lhs, names, opts) * inv;
    }
    case Expr::Kind::pow: {
      int k = integer_exponent(e);
      if (k < 0) fail_at(e, "negative exponent is not polynomial");
      MultiPoly b = eval_polynomial(*e.lhs, names, opts);
      if (!b.is_zero()) check_degree(e, b.total_degree() * k, opts);
      return pow(b, static_cast<unsigned>(k));
    }
    case Expr::Kind::exp:
      fail_at(e, "exp(...) is not polynomial");
  }
  fail_at(e, "bad expression");
}

RatFunc eval_ratfunc(const Expr& e, std::span<const std::string> names,
                     const EvalOptions& opts) {
  const std::size_t n = names.size();
  switch (e.kind) {
    case Expr::Kind::number:
      return RatFunc::constant(n, e.value);
    case Expr::Kind::variable:
      return RatFunc::variable(n, variable_index(e, names));
    case Expr::Kind::add:
      return eval_ratfunc(*e.lhs, names, opts) + eval_ratfunc(*e.rhs, names, opts);
    case Expr::Kind::sub:
      return eval_ratfunc(*e.lhs, names, opts) - eval_ratfunc(*e.rhs, names, opts);
    case Expr::Kind::neg:
      return -eval_ratfunc(*e.lhs, names, opts);
    case Expr::Kind::mul: {
      RatFunc r = eval_ratfunc(*e.lhs, names, opts) * eval_ratfunc(*e.rhs, names, opts);
      check_degree(e, std::max(r.num().total_degree(), r.den().total_degree()), opts);
      return r;
    }
    case Expr::Kind::div: {
      RatFunc d = eval_ratfunc(*e.rhs, names, opts);
      if (d.is_zero()) fail_at(e, "division by zero");
      return eval_ratfunc(*e.lhs, names, opts) / d;
    }
    case Expr::Kind::pow: {
      int k = integer_exponent(e);
      RatFunc b = eval_ratfunc(*e.lhs, names, opts);
      if (b.is_zero() && k < 0) fail_at(e, "division by zero");
      int deg = std::max(b.num().total_degree(), b.den().total_degree());
      if (!b.is_zero()) check_degree(e, deg * std::abs(k), opts);
      return pow(b, k);
    }
    case Expr::Kind::exp:
      fail_at(e, "exp(...) is not a rational function");
  }
  fail_at(e, "bad expression");
}

int max_degree_from_env() {
  const char* v = std::getenv("LVK_MAX_DEGREE");
  if (!v || !*v) return 64;
  char* end = nullptr;
  long d = std::strtol(v, &end, 10);
  if (*end != '\0' || d <= 0 || d > 1000000) {
    throw InvalidArgument("LVK_MAX_DEGREE must be a positive integer");
  }
  return static_cast<int>(d);
}

}  // namespace lvk
