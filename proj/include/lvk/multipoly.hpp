#pragma once

// Sparse multivariate polynomials over Q in graded-lexicographic order.
//
// Variables are positional (x_0 .. x_{arity-1}); names are supplied only
// when printing. Terms are kept sorted, leading (largest) term first, and
// never carry a zero coefficient, so structural equality is polynomial
// equality.

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvk/rational.hpp"

namespace lvk {

inline constexpr std::size_t kMaxArity = 8;

/// Degree of the zero polynomial; strictly below every real degree.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

/// Exponent vector, zero padded past the owning polynomial's arity.
using Exponent = std::array<std::uint16_t, kMaxArity>;

int total_degree(const Exponent& e);

/// Graded-lex comparison: negative, zero or positive.
int grlex_compare(const Exponent& a, const Exponent& b);

struct Term {
  Exponent exponent{};
  Rational coeff;
};

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::size_t arity);

  static MultiPoly constant(std::size_t arity, const Rational& value);
  static MultiPoly variable(std::size_t arity, std::size_t index,
                            unsigned power = 1);
  static MultiPoly monomial(std::size_t arity, const Exponent& e,
                            const Rational& coeff);
  /// Builds from arbitrary (possibly repeated, unsorted) terms.
  static MultiPoly from_terms(std::size_t arity, std::vector<Term> terms);

  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Constant term (the coefficient of the zero exponent).
  Rational constant_term() const;

  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;

  const Term& leading_term() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

 private:
  std::size_t arity_ = 0;
  std::vector<Term> terms_;

  friend MultiPoly multiply_term(const MultiPoly& p, const Term& t);
};

enum class PolyOp { add, sub, mul };

/// Checked ring operation; throws ArityMismatch on differing arities.
MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op);

MultiPoly multiply_term(const MultiPoly& p, const Term& t);
MultiPoly pow(const MultiPoly& p, unsigned n);

MultiPoly derivative(const MultiPoly& p, std::size_t var);

/// Exact quotient a / b, or nullopt when b does not divide a.
/// Throws ZeroDivision when b is zero.
std::optional<MultiPoly> exact_div(const MultiPoly& a, const MultiPoly& b);

/// Divides and throws if not exact; for internal steps known to be exact.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);

/// Scales to graded-lex leading coefficient 1 (zero stays zero).
MultiPoly normalized(const MultiPoly& p);

/// Greatest common divisor normalized to leading coefficient 1; one of the
/// inputs may be zero. Recursive content/primitive-part reduction with a
/// subresultant remainder sequence in the highest occurring variable.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b);

/// Dense coefficient list of p viewed as a polynomial in `var`;
/// entry k is the (var-free) coefficient of var^k.
std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var);
MultiPoly from_coefficients(std::span<const MultiPoly> coeffs,
                            std::size_t var);

/// gcd of the coefficients of p in `var`.
MultiPoly content_in(const MultiPoly& p, std::size_t var);

MultiPoly substitute(const MultiPoly& p, std::size_t var,
                     const Rational& value);

/// Replaces x_var by the polynomial q (same arity as p).
MultiPoly compose(const MultiPoly& p, std::size_t var, const MultiPoly& q);

/// Reorders variables: variable i of p becomes variable perm[i].
MultiPoly permute_variables(const MultiPoly& p,
                            std::span<const std::size_t> perm);

MultiPoly with_arity(const MultiPoly& p, std::size_t arity);

/// Total order used for canonical sorting (compares leading terms first).
int compare(const MultiPoly& a, const MultiPoly& b);

/// Canonical text: graded-lex order, explicit `*` and `^`, no spaces.
std::string to_string(const MultiPoly& p, std::span<const std::string> names);

/// Lowest common multiple of all coefficient denominators.
Integer denominator_lcm(const MultiPoly& p);

// Remainder sequences in one variable, shared by gcd and the residue
// machinery. Polynomials are dense coefficient lists in that variable.
namespace prs {

using Dense = std::vector<MultiPoly>;

int degree(const Dense& p);
void trim(Dense& p);

/// lc(b)^(deg a - deg b + 1) * a mod b.
Dense pseudo_remainder(const Dense& a, const Dense& b);

struct SubresultantChain {
  MultiPoly resultant;
  /// R_0 = a, R_1 = b, ... last nonzero member of the subresultant PRS.
  std::vector<Dense> remainders;
};

/// Subresultant PRS of a and b (deg a >= deg b, b != 0) and their
/// resultant in the sign convention of the Sylvester determinant with a's
/// coefficients in the top rows.
SubresultantChain subresultant_chain(const Dense& a, const Dense& b,
                                     std::size_t arity);

}  // namespace prs

}  // namespace lvk
