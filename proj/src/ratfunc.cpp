#include "lvk/ratfunc.hpp"

#include <utility>

#include "lvk/errors.hpp"

namespace lvk {

RatFunc::RatFunc(std::size_t arity)
    : num_(arity), den_(MultiPoly::constant(arity, Rational(1))) {}

RatFunc::RatFunc(MultiPoly num)
    : num_(std::move(num)),
      den_(MultiPoly::constant(num_.arity(), Rational(1))) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.arity() != den_.arity()) {
    throw ArityMismatch("numerator/denominator arity mismatch");
  }
  if (den_.is_zero()) throw ZeroDivision("rational function with zero denominator");
  normalize();
}

RatFunc::RatFunc(MultiPoly num, MultiPoly den, Reduced)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.arity(), Rational(1));
    return;
  }
  if (den_.leading_coeff() != 1) {
    Rational inv = 1 / den_.leading_coeff();
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc RatFunc::constant(std::size_t arity, const Rational& value) {
  return RatFunc(MultiPoly::constant(arity, value));
}

RatFunc RatFunc::variable(std::size_t arity, std::size_t index) {
  return RatFunc(MultiPoly::variable(arity, index));
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw InvalidArgument("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.arity(), Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  if (den_.leading_coeff() != 1) {
    Rational inv = 1 / den_.leading_coeff();
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    MultiPoly n = num_ + other.num_;
    *this = den_.is_constant() ? RatFunc(std::move(n), den_, Reduced{})
                               : RatFunc(std::move(n), den_);
    return *this;
  }
  if (other.den_.is_constant()) {
    // Adding a polynomial keeps the fraction reduced.
    num_ += other.num_ * den_;
    return *this;
  }
  if (den_.is_constant()) {
    MultiPoly n = num_ * other.den_ + other.num_;
    *this = RatFunc(std::move(n), other.den_, Reduced{});
    return *this;
  }
  MultiPoly g = gcd(den_, other.den_);
  MultiPoly b1 = divide_exact(den_, g);
  MultiPoly d1 = divide_exact(other.den_, g);
  MultiPoly n = num_ * d1 + other.num_ * b1;
  MultiPoly d = den_ * d1;
  if (!g.is_constant() && !n.is_zero()) {
    MultiPoly h = gcd(n, g);
    if (!h.is_constant()) {
      n = divide_exact(n, h);
      d = divide_exact(d, h);
    }
  }
  *this = RatFunc(std::move(n), std::move(d), Reduced{});
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& other) { return *this += -other; }

RatFunc& RatFunc::operator*=(const RatFunc& other) {
  if (num_.arity() != other.num_.arity()) {
    throw ArityMismatch("rational function arity mismatch");
  }
  if (is_zero() || other.is_zero()) {
    return *this = RatFunc(num_.arity());
  }
  // Cross-cancel; both operands are reduced, so the product is too.
  MultiPoly a = num_, b = den_, c = other.num_, d = other.den_;
  if (!d.is_constant()) {
    MultiPoly g1 = gcd(a, d);
    if (!g1.is_constant()) {
      a = divide_exact(a, g1);
      d = divide_exact(d, g1);
    }
  }
  if (!b.is_constant()) {
    MultiPoly g2 = gcd(c, b);
    if (!g2.is_constant()) {
      c = divide_exact(c, g2);
      b = divide_exact(b, g2);
    }
  }
  *this = RatFunc(a * c, b * d, Reduced{});
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& other) {
  if (other.is_zero()) throw ZeroDivision("division by the zero rational function");
  RatFunc inv(other.den_, other.num_, Reduced{});
  return *this *= inv;
}

RatFunc operator*(RatFunc a, const Rational& c) {
  if (is_zero(c)) return RatFunc(a.arity());
  a.num_ *= c;
  return a;
}

RatFunc derivative(const RatFunc& f, std::size_t var) {
  const MultiPoly& n = f.num();
  const MultiPoly& d = f.den();
  if (!d.depends_on(var)) {
    return RatFunc(derivative(n, var), d);
  }
  // (n/d)' = (n' d - n d') / d^2; divide out g = gcd(d, d') first.
  MultiPoly dd = derivative(d, var);
  MultiPoly g = gcd(d, dd);
  MultiPoly d_over_g = divide_exact(d, g);
  MultiPoly top = derivative(n, var) * d_over_g - n * divide_exact(dd, g);
  return RatFunc(top, d * d_over_g);
}

RatFunc pow(const RatFunc& f, int n) {
  if (n >= 0) {
    return RatFunc(pow(f.num(), static_cast<unsigned>(n)),
                   pow(f.den(), static_cast<unsigned>(n)));
  }
  if (f.is_zero()) throw ZeroDivision("negative power of zero");
  return RatFunc(pow(f.den(), static_cast<unsigned>(-n)),
                 pow(f.num(), static_cast<unsigned>(-n)));
}

RatFunc with_arity(const RatFunc& f, std::size_t arity) {
  return RatFunc(with_arity(f.num(), arity), with_arity(f.den(), arity));
}

RatFunc permute_variables(const RatFunc& f, std::span<const std::size_t> perm) {
  return RatFunc(permute_variables(f.num(), perm),
                 permute_variables(f.den(), perm));
}

RatFunc substitute(const RatFunc& f, std::size_t var, const Rational& value) {
  return RatFunc(substitute(f.num(), var, value),
                 substitute(f.den(), var, value));
}

namespace {

bool is_atomic_denominator(const MultiPoly& d) {
  if (d.size() != 1 || d.leading_coeff() != 1) return false;
  int vars = 0;
  for (auto e : d.leading_term().exponent) vars += e != 0;
  return vars == 1;
}

}  // namespace

std::string to_string(const RatFunc& f, std::span<const std::string> names) {
  if (f.den().is_constant()) return to_string(f.num(), names);
  std::string num = to_string(f.num(), names);
  if (f.num().size() > 1) num = "(" + num + ")";
  std::string den = to_string(f.den(), names);
  if (!is_atomic_denominator(f.den())) den = "(" + den + ")";
  return num + "/" + den;
}

}  // namespace lvk
