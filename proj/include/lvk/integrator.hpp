#pragma once

// Closedness test and integration of closed rational 1-forms into
// sum c_i log R_i + R, one variable at a time: termwise polynomial part,
// Hermite reduction and the logarithmic part over the field of the
// remaining variables, then recursion on the remainder form.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lvk/darboux.hpp"
#include "lvk/oneform.hpp"
#include "lvk/unipoly.hpp"

namespace lvk {

struct IntegrationResult {
  std::vector<ScaledGroup> log_groups;
  RatFunc rat_part;

  std::size_t arity() const { return rat_part.arity(); }
  bool has_algebraic_groups() const;
};

struct ClosednessCheck {
  bool closed = true;
  /// First failing pair (i < j) and d_i w_j - d_j w_i there.
  std::size_t i = 0;
  std::size_t j = 0;
  RatFunc residual;
};

ClosednessCheck is_closed(const OneForm& w);

struct IntegrateOptions {
  /// Elimination order; empty means x_1, ..., x_n.
  std::vector<std::size_t> order;
  int max_degree = 64;
};

/// Potential of a closed form with the constant of integration 0. Throws
/// NotClosedError when w is not closed and DegreeLimitExceeded when an
/// intermediate exceeds the degree cap.
IntegrationResult integrate_closed(const OneForm& w, const IntegrateOptions& opts = {});

OneForm differentiate(const IntegrationResult& r);

DarbouxFunction to_darboux(const IntegrationResult& r);

/// "log(x) - 2*log(y) + y/x"; "0" for the empty result.
std::string to_string(const IntegrationResult& r, std::span<const std::string> names);

}  // namespace lvk
