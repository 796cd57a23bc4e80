#pragma once

// Polynomial vector fields x' = P(x) and the Lie derivative X_P.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvk/expr.hpp"
#include "lvk/multipoly.hpp"
#include "lvk/oneform.hpp"
#include "lvk/ratfunc.hpp"

namespace lvk {

class PolyVectorField {
 public:
  PolyVectorField() = default;
  PolyVectorField(std::vector<std::string> names, std::vector<MultiPoly> components);

  std::size_t arity() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_[i]; }
  /// Maximum total degree of the components (0 for the zero field).
  int degree() const { return degree_; }

  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
    return a.names_ == b.names_ && a.components_ == b.components_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<MultiPoly> components_;
  int degree_ = 0;
};

/// Reads the system file format:
///   vars x, y
///   dx = x*(1 - y)
///   dy = y*(x - 1)
/// Lines may appear in any order after `vars`; `#` starts a comment.
PolyVectorField parse_system(std::string_view text, const EvalOptions& opts = {});

/// Canonical text accepted by parse_system.
std::string print_system(const PolyVectorField& X);

/// Same field written in another variable order: new variable k is
/// old variable order[k].
PolyVectorField reorder(const PolyVectorField& X, std::span<const std::size_t> order);

/// Divides every component by a common polynomial factor.
PolyVectorField divide_components(const PolyVectorField& X, const MultiPoly& g);

MultiPoly divergence(const PolyVectorField& X);
MultiPoly lie_derivative(const PolyVectorField& X, const MultiPoly& f);
RatFunc lie_derivative(const PolyVectorField& X, const RatFunc& f);
/// Sum of w_i P_i.
RatFunc lie_derivative_log(const PolyVectorField& X, const OneForm& w);

}  // namespace lvk
