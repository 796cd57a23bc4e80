#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "lvk/multipoly.hpp"

namespace lvk {

/// Reduced quotient num/den; den has graded-lex leading coefficient 1.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(std::size_t arity);
  explicit RatFunc(MultiPoly num);
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc constant(std::size_t arity, const Rational& value);
  static RatFunc variable(std::size_t arity, std::size_t index);

  std::size_t arity() const { return num_.arity(); }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant function.
  Rational constant_value() const;
  bool depends_on(std::size_t var) const {
    return num_.depends_on(var) || den_.depends_on(var);
  }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& other);
  RatFunc& operator-=(const RatFunc& other);
  RatFunc& operator*=(const RatFunc& other);
  RatFunc& operator/=(const RatFunc& other);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator*(RatFunc a, const Rational& c);

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  struct Reduced {};
  RatFunc(MultiPoly num, MultiPoly den, Reduced);
  void normalize();

  MultiPoly num_;
  MultiPoly den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

RatFunc derivative(const RatFunc& f, std::size_t var);
RatFunc pow(const RatFunc& f, int n);
RatFunc with_arity(const RatFunc& f, std::size_t arity);
RatFunc permute_variables(const RatFunc& f, std::span<const std::size_t> perm);
RatFunc substitute(const RatFunc& f, std::size_t var, const Rational& value);

/// Canonical text, e.g. "x/(y^2*z)", "(x+1)/y", "-1/2*x^2".
std::string to_string(const RatFunc& f, std::span<const std::string> names);

}  // namespace lvk
