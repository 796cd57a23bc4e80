#include "lvk/oneform.hpp"

#include "lvk/errors.hpp"

namespace lvk {

OneForm::OneForm(std::vector<RatFunc> c) : components(std::move(c)) {
  for (const auto& u : components) {
    if (u.arity() != components.size()) {
      throw ArityMismatch("1-form component arity differs from its length");
    }
  }
}

namespace {

void require_same(const OneForm& a, const OneForm& b) {
  if (a.arity() != b.arity()) throw ArityMismatch("1-forms of different arity");
}

}  // namespace

OneForm operator+(const OneForm& a, const OneForm& b) {
  require_same(a, b);
  OneForm r = a;
  for (std::size_t i = 0; i < r.arity(); ++i) r.components[i] += b.components[i];
  return r;
}

OneForm operator-(const OneForm& a, const OneForm& b) {
  require_same(a, b);
  OneForm r = a;
  for (std::size_t i = 0; i < r.arity(); ++i) r.components[i] -= b.components[i];
  return r;
}

OneForm operator*(const OneForm& a, const Rational& c) {
  OneForm r = a;
  for (auto& u : r.components) u = u * c;
  return r;
}

OneForm OneForm::operator-() const { return *this * Rational(-1); }

OneForm gradient(const RatFunc& f) {
  OneForm w;
  for (std::size_t i = 0; i < f.arity(); ++i) w.components.push_back(derivative(f, i));
  return w;
}

std::string to_string(const OneForm& w, std::span<const std::string> names) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.arity(); ++i) {
    if (i) out += ", ";
    out += to_string(w.components[i], names);
  }
  return out + ")";
}

}  // namespace lvk
