#pragma once

// Darboux polynomials, exponential factors and Darboux functions
// exp(g/h) * prod f_i^(l_i) * prod over residue groups, with their
// logarithmic-derivative calculus and linear synthesis.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvk/expr.hpp"
#include "lvk/oneform.hpp"
#include "lvk/unipoly.hpp"
#include "lvk/vector_field.hpp"

namespace lvk {

struct Cofactor {
  MultiPoly poly;
};

struct ExponentialFactor {
  MultiPoly g;
  MultiPoly h;
  Cofactor cofactor;
};

struct DarbouxFactor {
  MultiPoly base;
  Rational exponent;

  friend bool operator==(const DarbouxFactor& a, const DarbouxFactor& b) {
    return a.base == b.base && a.exponent == b.exponent;
  }
};

/// Stored canonically: constant multiples are dropped (only the logarithmic
/// derivative is meaningful), monomial content of every base is split into
/// variable factors, bases are normalized to graded-lex leading coefficient
/// 1, equal bases are merged and zero exponents removed.
class DarbouxFunction {
 public:
  DarbouxFunction() = default;
  /// The constant function 1.
  explicit DarbouxFunction(std::size_t arity);
  DarbouxFunction(RatFunc exp_arg, std::vector<DarbouxFactor> factors,
                  std::vector<ScaledGroup> groups = {});

  static DarbouxFunction from_ratfunc(const RatFunc& f);
  static DarbouxFunction power_of(const MultiPoly& base, const Rational& exponent);
  static DarbouxFunction exponential(const RatFunc& arg);

  std::size_t arity() const { return arity_; }
  const RatFunc& exp_arg() const { return exp_arg_; }
  const std::vector<DarbouxFactor>& factors() const { return factors_; }
  const std::vector<ScaledGroup>& group_factors() const { return groups_; }

  bool is_one() const { return exp_arg_.is_zero() && factors_.empty() && groups_.empty(); }
  /// A rational function up to a constant: no exponential, no groups and
  /// integer exponents.
  bool is_rational() const;
  /// The rational function (constant factor 1) when is_rational().
  std::optional<RatFunc> as_ratfunc() const;

  friend DarbouxFunction operator*(const DarbouxFunction& a, const DarbouxFunction& b);
  friend bool operator==(const DarbouxFunction& a, const DarbouxFunction& b) {
    return a.arity_ == b.arity_ && a.exp_arg_ == b.exp_arg_ && a.factors_ == b.factors_ &&
           a.groups_ == b.groups_;
  }

 private:
  void canonicalize();

  std::size_t arity_ = 0;
  RatFunc exp_arg_;
  std::vector<DarbouxFactor> factors_;
  std::vector<ScaledGroup> groups_;
};

DarbouxFunction pow(const DarbouxFunction& d, const Rational& q);
DarbouxFunction inverse(const DarbouxFunction& d);

/// Factors joined by " * ": "x^-1 * y^-1", "exp(y/x) * (x+1)^(1/2)".
std::string to_string(const DarbouxFunction& d, std::span<const std::string> names);

/// Reads products, quotients and rational powers of rational expressions and
/// exp(...) factors, e.g. "x^2/y", "exp(y/x)*(x+1)^(1/2)".
DarbouxFunction eval_darboux(const Expr& e, std::span<const std::string> names,
                             const EvalOptions& opts = {});

/// Cofactor k with X(f) = k f, or nullopt when f is not a Darboux polynomial.
/// Throws InvalidArgument for zero or constant f.
std::optional<Cofactor> cofactor_of(const PolyVectorField& X, const MultiPoly& f);

struct ExponentialVerdict {
  std::optional<ExponentialFactor> factor;
  std::string reason;  ///< empty when accepted
  RatFunc value;       ///< X(g/h)
};

/// Accepts exp(g/h) when X(g/h) is a polynomial of degree at most m - 1.
ExponentialVerdict verify_exponential_factor(const PolyVectorField& X, const MultiPoly& g,
                                             const MultiPoly& h);

OneForm log_derivative(const DarbouxFunction& d);

struct IdentityCheck {
  bool holds = false;
  RatFunc residual;
};

/// Residual sum(w_i P_i) + div P with w the logarithmic derivative of d.
IdentityCheck is_jacobian_multiplier(const PolyVectorField& X, const DarbouxFunction& d);
/// Residual sum(w_i P_i).
IdentityCheck is_first_integral(const PolyVectorField& X, const DarbouxFunction& d);

enum class SynthesisTarget { first_integral, jacobian_multiplier };

struct SynthesisResult {
  /// Multiplier target: the particular multiplier J0 followed by J0 * H_k for
  /// each homogeneous solution H_k. First-integral target: the H_k.
  std::vector<DarbouxFunction> functions;
  /// Exponent vectors (Darboux polynomials first, then exponential factors)
  /// matching `functions`.
  std::vector<std::vector<Rational>> exponents;
  bool consistent = false;
  std::size_t dimension = 0;  ///< dimension of the homogeneous solution space
};

/// Solves sum(l_i k_i) + sum(m_j L_j) = 0 (first integrals) or = -div P
/// (multipliers) over the coefficients of the cofactors. Throws
/// VerificationFailure when an input is not a Darboux polynomial or an
/// exponential factor.
SynthesisResult synthesize(const PolyVectorField& X, std::span<const MultiPoly> polys,
                           std::span<const RatFunc> exp_args, SynthesisTarget target);

}  // namespace lvk
