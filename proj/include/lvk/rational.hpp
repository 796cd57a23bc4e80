#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lvk {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Accepts "3", "-2/5" and finite decimals such as "0.25"; no exponent syntax.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Integer abs_integer(const Integer& z);

}  // namespace lvk
