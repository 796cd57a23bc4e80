#pragma once

// Multiplier ratios as first integrals, the Gamma-determinant construction
// of a Jacobian multiplier from rational first integrals, and the planar
// integrating-factor first integral.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvk/darboux.hpp"
#include "lvk/integrator.hpp"
#include "lvk/matrix.hpp"
#include "lvk/vector_field.hpp"

namespace lvk {

/// A named exact identity and the value of its left-hand side minus its
/// right-hand side.
struct IdentityResidual {
  std::string name;
  RatFunc residual;

  bool holds() const { return residual.is_zero(); }
};

struct IndependenceCertificate {
  RatFuncMatrix gradient_rows;
  std::size_t rank = 0;
  std::vector<std::size_t> minor_rows;
  std::vector<std::size_t> minor_cols;
  RatFunc minor_determinant;  ///< nonzero unless rank is 0
};

/// Rank of `rows` with a nonsingular rank x rank minor as witness.
IndependenceCertificate certify_independence(const RatFuncMatrix& rows);

struct RatioIntegral {
  std::size_t numerator = 0;    ///< index into the multiplier list
  std::size_t denominator = 0;
  DarbouxFunction ratio;
  OneForm form;                 ///< w_numerator - w_denominator
  IdentityResidual check;       ///< sum(form_i P_i)
};

struct RatioResult {
  std::vector<IdentityResidual> multiplier_checks;
  std::vector<RatioIntegral> ratios;
  IndependenceCertificate certificate;
  /// rank == number of ratios.
  bool independent = false;
};

/// For n - 1 multipliers J_1..J_{n-1}, the n - 2 first integrals
/// J_l / J_{n-1}. Dependence is reported through `independent`. Throws
/// VerificationFailure when a multiplier fails its check and
/// InvalidArgument on a wrong count.
RatioResult ratio_first_integrals(const PolyVectorField& X,
                                  std::span<const DarbouxFunction> multipliers);

struct GammaDeterminants {
  RatFunc gamma;
  std::vector<RatFunc> gammas;  ///< Gamma_1 .. Gamma_{n-1}
};

/// Gamma = det(d_1 H, ..., d_{n-1} H) and Gamma_i with column i replaced by
/// d_n H. Throws VerificationFailure when some H is not a first integral or
/// Gamma vanishes identically.
GammaDeterminants gamma_determinants(const PolyVectorField& X, std::span<const RatFunc> H);

struct MultiplierDerivation {
  /// Working order: working variable k is input variable order[k]. All
  /// fields below are written in the input variables.
  std::vector<std::size_t> order;
  /// gcd of the components, divided out before the construction (1 if none).
  MultiPoly common_factor;
  std::vector<std::string> warnings;
  RatFunc gamma;
  std::vector<RatFunc> gammas;
  RatFunc h;
  OneForm a_form;
  OneForm u_form;
  IntegrationResult potential;
  /// exp(potential) divided by common_factor.
  DarbouxFunction result;
  std::vector<IdentityResidual> identities;
};

struct PipelineOptions {
  /// Order tried first; empty means the input order. Every other order is
  /// tried when Gamma or the last component vanishes.
  std::vector<std::size_t> order;
  int max_degree = 64;
};

/// Throws VerificationFailure naming the first identity that fails.
MultiplierDerivation multiplier_from_rational_integrals(const PolyVectorField& X,
                                                        std::span<const RatFunc> H,
                                                        const PipelineOptions& opts = {});

struct PlanarFirstIntegral {
  /// (V P_2, -V P_1) when V is rational.
  std::optional<OneForm> form;
  std::optional<IntegrationResult> integral;
  /// sum(dI_i P_i) for the integral, or, when V is not rational, the
  /// closedness defect of V (P_2, -P_1) divided by -V, which equals
  /// sum(w_i P_i) + div P.
  IdentityResidual check;
  bool available() const { return integral.has_value(); }
};

/// Throws VerificationFailure when V is not a multiplier of the planar X.
PlanarFirstIntegral first_integral_2d(const PolyVectorField& X, const DarbouxFunction& V,
                                      const IntegrateOptions& opts = {});

struct Theorem2Report {
  MultiplierDerivation derivation;
  IdentityResidual multiplier_check;
};

Theorem2Report theorem2_pipeline(const PolyVectorField& X, std::span<const RatFunc> H,
                                 const PipelineOptions& opts = {});

}  // namespace lvk
