#pragma once

// Univariate polynomials in one distinguished variable with coefficients in
// the fraction field of the remaining variables, and the rational
// integration machinery built on them: Yun squarefree decomposition,
// resultants, Hermite reduction and the Lazard-Rioboo-Trager logarithmic
// part.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lvk/ratfunc.hpp"

namespace lvk {

class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(std::size_t arity, std::size_t main_var);
  /// coeffs[k] multiplies main_var^k; none may depend on main_var.
  UniPoly(std::size_t arity, std::size_t main_var, std::vector<RatFunc> coeffs);

  static UniPoly from_poly(const MultiPoly& p, std::size_t main_var);
  /// f must have a denominator free of main_var.
  static UniPoly from_ratfunc(const RatFunc& f, std::size_t main_var);
  static UniPoly constant(std::size_t arity, std::size_t main_var,
                          const RatFunc& c);
  static UniPoly monomial(std::size_t arity, std::size_t main_var,
                          const RatFunc& c, unsigned k);

  std::size_t arity() const { return arity_; }
  std::size_t main_var() const { return var_; }
  int degree() const {
    return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1;
  }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<RatFunc>& coeffs() const { return coeffs_; }
  RatFunc coeff(std::size_t k) const;
  const RatFunc& lc() const { return coeffs_.back(); }

  RatFunc to_ratfunc() const;
  /// Requires every coefficient to be a polynomial.
  MultiPoly to_poly() const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const RatFunc& c);
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.arity_ == b.arity_ && a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();
  std::size_t arity_ = 0;
  std::size_t var_ = 0;
  std::vector<RatFunc> coeffs_;
};

struct DivMod {
  UniPoly quotient;
  UniPoly remainder;
};

DivMod divmod(const UniPoly& a, const UniPoly& b);
UniPoly rem(const UniPoly& a, const UniPoly& b);
/// Throws if b does not divide a.
UniPoly exact_quotient(const UniPoly& a, const UniPoly& b);
UniPoly derivative(const UniPoly& p);
UniPoly monic(const UniPoly& p);
UniPoly pow(const UniPoly& p, unsigned n);

/// Monic gcd (zero only when both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

struct ExtendedGcd {
  UniPoly gcd;  ///< monic
  UniPoly s;    ///< s*a + t*b = gcd
  UniPoly t;
};
ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b);

/// Numerator and denominator of f as polynomials in `var`.
std::pair<UniPoly, UniPoly> split_ratfunc(const RatFunc& f, std::size_t var);

struct SquarefreePart {
  UniPoly factor;
  int multiplicity = 0;
};

struct SquarefreeDecomposition {
  std::vector<SquarefreePart> parts;  ///< ascending multiplicity
  RatFunc unit;
};

SquarefreeDecomposition squarefree_yun(const UniPoly& p);

/// Resultant in the main variable, equal to the Sylvester determinant with
/// p's coefficients in the top rows; so res(x - a, x - b) = a - b.
RatFunc resultant(const UniPoly& p, const UniPoly& q);

struct HermiteResult {
  RatFunc rat_part;
  UniPoly reduced_num;
  UniPoly reduced_den;  ///< squarefree, monic
};

/// num/den = d/dx(rat_part) + reduced_num/reduced_den with
/// deg reduced_num < deg reduced_den. A polynomial part of num/den is
/// integrated into rat_part.
HermiteResult hermite_reduce(const UniPoly& num, const UniPoly& den);

/// Sum over the roots t of min_poly of t * log(argument(t, x)).
///
/// Both polynomials live in arity n + 1: the residue symbol is the last
/// variable. min_poly has rational coefficients and is monic and squarefree;
/// argument is a polynomial in the integration variable with coefficients
/// reduced modulo min_poly. For a degree-one min_poly t - c the argument is
/// free of t and stored as a primitive polynomial with leading coefficient 1.
struct ResidueGroup {
  UniPoly min_poly;
  UniPoly argument;

  std::size_t residue_var() const { return min_poly.main_var(); }
  std::size_t base_arity() const { return min_poly.arity() - 1; }
  bool is_rational() const { return min_poly.degree() == 1; }
  /// The single residue of a degree-one group.
  Rational residue() const;
  /// Argument as a polynomial (degree-one groups only), base arity.
  MultiPoly rational_argument() const;

  friend bool operator==(const ResidueGroup& a, const ResidueGroup& b) {
    return a.min_poly == b.min_poly && a.argument == b.argument;
  }
};

/// scale * (sum over the roots t of min_poly of t * log argument).
struct ScaledGroup {
  ResidueGroup group;
  Rational scale;

  friend bool operator==(const ScaledGroup& a, const ScaledGroup& b) {
    return a.group == b.group && a.scale == b.scale;
  }
};

/// Logarithmic part of num/den (den squarefree, deg num < deg den, coprime).
/// Rational residues are split off into degree-one groups. Throws
/// NonConstantResidue when the residues are not constants.
std::vector<ResidueGroup> rothstein_trager(const UniPoly& num,
                                           const UniPoly& den);

/// Sum of p(t) over the roots of the monic squarefree m, via Newton power
/// sums. p is reduced modulo m first.
RatFunc trace_of_algebraic(const UniPoly& p, const UniPoly& m);

/// d/dx_var of the group's value, in the base arity.
RatFunc group_log_derivative(const ResidueGroup& g, std::size_t var);

/// Integer-primitive rendering of the minimal polynomial, e.g. "8*t^2-1".
/// `names` covers the extended arity, residue symbol last.
std::string min_poly_string(const ResidueGroup& g,
                            std::span<const std::string> names);

/// "RootSum(8*t^2-1, t*log(x-4*t))", or "log(x+1)" for a degree-one group
/// with residue 1 (rational groups print as their residue times a log).
/// `names` are the base variable names; the residue symbol is chosen to
/// avoid them.
std::string root_sum_string(const ResidueGroup& g, std::span<const std::string> names);

/// Rational roots of a polynomial with constant coefficients (ascending
/// coefficient list). Gives up (returns what it found) on huge coefficients.
std::vector<Rational> rational_roots(std::span<const Rational> coeffs);

/// A name for the residue symbol not clashing with `names`.
std::string residue_symbol(std::span<const std::string> names);

}  // namespace lvk
