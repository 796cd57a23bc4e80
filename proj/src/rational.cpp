#include "lvk/rational.hpp"

#include <cctype>

#include "lvk/errors.hpp"

namespace lvk {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InvalidArgument("malformed rational literal");
    }
    Integer d(std::string(den), 10);
    if (d == 0) throw ZeroDivision("zero denominator in rational literal");
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)) || (whole.empty() && frac.empty())) {
      throw InvalidArgument("malformed decimal literal");
    }
    std::string digits = std::string(whole) + std::string(frac);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = Rational(Integer(digits.empty() ? std::string("0") : digits, 10), scale);
    value.canonicalize();
  } else {
    if (!all_digits(text)) throw InvalidArgument("malformed integer literal");
    value = Rational(Integer(std::string(text), 10));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer abs_integer(const Integer& z) { return z < 0 ? Integer(-z) : z; }

}  // namespace lvk
