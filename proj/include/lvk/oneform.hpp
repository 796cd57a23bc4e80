#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lvk/ratfunc.hpp"

namespace lvk {

/// U_1 dx_1 + ... + U_n dx_n with rational components of common arity n.
struct OneForm {
  std::vector<RatFunc> components;

  OneForm() = default;
  explicit OneForm(std::vector<RatFunc> c);

  std::size_t arity() const { return components.size(); }
  const RatFunc& operator[](std::size_t i) const { return components[i]; }

  friend OneForm operator+(const OneForm& a, const OneForm& b);
  friend OneForm operator-(const OneForm& a, const OneForm& b);
  friend OneForm operator*(const OneForm& a, const Rational& c);
  OneForm operator-() const;
  friend bool operator==(const OneForm& a, const OneForm& b) {
    return a.components == b.components;
  }
};

/// Exact differential of f.
OneForm gradient(const RatFunc& f);

/// (w_1, ..., w_n) with each component rendered canonically.
std::string to_string(const OneForm& w, std::span<const std::string> names);

}  // namespace lvk
