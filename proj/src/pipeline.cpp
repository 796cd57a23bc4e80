#include "lvk/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "lvk/errors.hpp"

namespace lvk {

namespace {

RatFunc one_of(std::size_t arity) { return RatFunc::constant(arity, Rational(1)); }

std::string describe(const RatFunc& r, std::span<const std::string> names) {
  return to_string(r, names);
}

// Working variable k is input variable order[k].
std::vector<std::size_t> inverse_order(std::span<const std::size_t> order) {
  std::vector<std::size_t> inv(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inv[order[k]] = k;
  return inv;
}

struct Attempt {
  GammaDeterminants dets;
  PolyVectorField X;
  std::vector<RatFunc> H;
};

GammaDeterminants determinants_unchecked(std::size_t n, std::span<const RatFunc> H) {
  const RatFunc one = one_of(n);
  const std::size_t m = n - 1;
  std::vector<std::vector<RatFunc>> grad(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) grad[r].push_back(derivative(H[r], c));
  }
  auto det_with = [&](std::optional<std::size_t> replaced) {
    RatFuncMatrix M(m, m, RatFunc(n));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        M(r, c) = (replaced && *replaced == c) ? grad[r][n - 1] : grad[r][c];
      }
    }
    return determinant(std::move(M), one);
  };
  GammaDeterminants out;
  out.gamma = det_with(std::nullopt);
  for (std::size_t i = 0; i < m; ++i) out.gammas.push_back(det_with(i));
  return out;
}

void require_first_integrals(const PolyVectorField& X, std::span<const RatFunc> H) {
  const std::size_t n = X.arity();
  if (n < 2) throw InvalidArgument("the construction needs at least two variables");
  if (H.size() != n - 1) {
    throw InvalidArgument("expected " + std::to_string(n - 1) + " first integrals, got " +
                          std::to_string(H.size()));
  }
  for (std::size_t k = 0; k < H.size(); ++k) {
    if (H[k].arity() != n) throw ArityMismatch("first integral arity differs from the system");
    if (H[k].is_constant()) {
      throw VerificationFailure("first integral " + std::to_string(k + 1) +
                                " is constant (zero gradient row)");
    }
    RatFunc r = lie_derivative(X, H[k]);
    if (!r.is_zero()) {
      throw VerificationFailure("H" + std::to_string(k + 1) +
                                " is not a first integral: X(H) = " +
                                describe(r, X.names()));
    }
  }
}

}  // namespace

IndependenceCertificate certify_independence(const RatFuncMatrix& rows) {
  IndependenceCertificate cert;
  cert.gradient_rows = rows;
  auto ech = row_reduce(rows);
  cert.rank = ech.pivot_cols.size();
  cert.minor_cols = ech.pivot_cols;
  cert.minor_rows = ech.pivot_rows;
  std::sort(cert.minor_rows.begin(), cert.minor_rows.end());
  std::size_t arity = rows.rows() && rows.cols() ? rows(0, 0).arity() : 0;
  RatFuncMatrix minor(cert.rank, cert.rank, RatFunc(arity));
  for (std::size_t r = 0; r < cert.rank; ++r) {
    for (std::size_t c = 0; c < cert.rank; ++c) {
      minor(r, c) = rows(cert.minor_rows[r], cert.minor_cols[c]);
    }
  }
  cert.minor_determinant =
      cert.rank ? determinant(std::move(minor), one_of(arity)) : one_of(arity);
  if (cert.rank && cert.minor_determinant.is_zero()) {
    throw Error("internal error: witness minor is singular");
  }
  return cert;
}

RatioResult ratio_first_integrals(const PolyVectorField& X,
                                  std::span<const DarbouxFunction> multipliers) {
  const std::size_t n = X.arity();
  if (n < 2 || multipliers.size() != n - 1) {
    throw InvalidArgument("expected " + std::to_string(n ? n - 1 : 0) +
                          " multipliers, got " + std::to_string(multipliers.size()));
  }
  RatioResult out;
  std::vector<OneForm> logs;
  for (std::size_t k = 0; k < multipliers.size(); ++k) {
    if (multipliers[k].arity() != n) throw ArityMismatch("multiplier arity differs from the system");
    IdentityCheck c = is_jacobian_multiplier(X, multipliers[k]);
    if (!c.holds) {
      throw VerificationFailure("J" + std::to_string(k + 1) +
                                " is not a Jacobian multiplier: residual " +
                                describe(c.residual, X.names()));
    }
    out.multiplier_checks.push_back({"multiplier J" + std::to_string(k + 1), c.residual});
    logs.push_back(log_derivative(multipliers[k]));
  }
  const std::size_t last = multipliers.size() - 1;
  RatFuncMatrix rows(last, n, RatFunc(n));
  for (std::size_t l = 0; l < last; ++l) {
    RatioIntegral ri;
    ri.numerator = l;
    ri.denominator = last;
    ri.ratio = multipliers[l] * inverse(multipliers[last]);
    ri.form = logs[l] - logs[last];
    ri.check = {"ratio J" + std::to_string(l + 1) + "/J" + std::to_string(last + 1),
                lie_derivative_log(X, ri.form)};
    if (!ri.check.holds()) {
      throw Error("internal error: multiplier ratio is not a first integral");
    }
    for (std::size_t c = 0; c < n; ++c) rows(l, c) = ri.form[c];
    out.ratios.push_back(std::move(ri));
  }
  out.certificate = certify_independence(rows);
  out.independent = out.certificate.rank == last;
  return out;
}

GammaDeterminants gamma_determinants(const PolyVectorField& X, std::span<const RatFunc> H) {
  require_first_integrals(X, H);
  GammaDeterminants d = determinants_unchecked(X.arity(), H);
  if (d.gamma.is_zero()) {
    throw VerificationFailure("Gamma vanishes identically in this variable order");
  }
  return d;
}

MultiplierDerivation multiplier_from_rational_integrals(const PolyVectorField& X0,
                                                        std::span<const RatFunc> H0,
                                                        const PipelineOptions& opts) {
  require_first_integrals(X0, H0);
  const std::size_t n = X0.arity();
  MultiplierDerivation out;

  MultiPoly g(n);
  for (const auto& p : X0.components()) {
    if (!p.is_zero()) g = g.is_zero() ? p : gcd(g, p);
  }
  if (g.is_zero()) throw VerificationFailure("the vector field is identically zero");
  g = normalized(g);
  out.common_factor = g;
  PolyVectorField X = X0;
  if (!g.is_constant()) {
    out.warnings.push_back("components share the factor " + to_string(g, X0.names()) +
                           "; it is divided out and the multiplier divided by it");
    X = divide_components(X0, g);
  }

  std::vector<std::size_t> first = opts.order;
  if (first.empty()) {
    first.resize(n);
    std::iota(first.begin(), first.end(), std::size_t{0});
  }
  if (first.size() != n) throw InvalidArgument("variable order has the wrong length");

  std::optional<Attempt> chosen;
  auto try_order = [&](const std::vector<std::size_t>& order) {
    PolyVectorField Xw = reorder(X, order);
    if (Xw[n - 1].is_zero()) return false;
    std::vector<std::size_t> to_work = inverse_order(order);
    std::vector<RatFunc> Hw;
    for (const auto& h : H0) Hw.push_back(permute_variables(h, to_work));
    GammaDeterminants d = determinants_unchecked(n, Hw);
    if (d.gamma.is_zero()) return false;
    chosen = Attempt{std::move(d), std::move(Xw), std::move(Hw)};
    out.order = order;
    return true;
  };
  if (!try_order(first)) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    bool found = false;
    do {
      if (order != first && try_order(order)) {
        found = true;
        break;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    if (!found) {
      throw VerificationFailure(
          "Gamma or the last component vanishes in every variable order; the first "
          "integrals are not functionally independent");
    }
    out.warnings.push_back("Gamma or the last component vanished in the requested order; "
                           "another order was used");
  }

  const PolyVectorField& Xw = chosen->X;
  const GammaDeterminants& d = chosen->dets;
  const RatFunc Pn(Xw[n - 1]);
  std::vector<IdentityResidual> ids;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    RatFunc r = d.gamma * RatFunc(Xw[i]) + d.gammas[i] * Pn;
    ids.push_back({"cramer " + std::to_string(i + 1), r});
  }
  RatFunc det_id = derivative(d.gamma, n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) det_id -= derivative(d.gammas[i], i);
  ids.push_back({"determinant", det_id});

  RatFunc h = Pn / d.gamma;
  std::vector<RatFunc> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(derivative(h, i) / h);
  OneForm A(a);
  ClosednessCheck closed = is_closed(A);
  ids.push_back({"closedness of A", closed.residual});
  RatFunc pairing = lie_derivative_log(Xw, A) - RatFunc(divergence(Xw));
  ids.push_back({"<A,P> - div P", pairing});

  for (auto& id : ids) {
    if (!id.holds()) {
      out.identities = ids;
      throw VerificationFailure("identity '" + id.name + "' fails: residual " +
                                describe(id.residual, Xw.names()));
    }
  }

  // Back to the input variables: working variable k is input order[k].
  const std::vector<std::size_t>& order = out.order;
  auto back = [&](const RatFunc& f) { return permute_variables(f, order); };
  out.gamma = back(d.gamma);
  for (const auto& gi : d.gammas) out.gammas.push_back(back(gi));
  out.h = back(h);
  std::vector<RatFunc> a0(n, RatFunc(n));
  for (std::size_t k = 0; k < n; ++k) a0[order[k]] = back(A[k]);
  out.a_form = OneForm(a0);
  out.u_form = -out.a_form;

  IntegrateOptions iopts;
  iopts.max_degree = opts.max_degree;
  out.potential = integrate_closed(out.u_form, iopts);
  out.result = to_darboux(out.potential);
  if (!g.is_constant()) out.result = out.result * DarbouxFunction::power_of(g, Rational(-1));

  IdentityCheck final_check = is_jacobian_multiplier(X0, out.result);
  ids.push_back({"multiplier", final_check.residual});
  out.identities = std::move(ids);
  if (!final_check.holds) {
    throw VerificationFailure("identity 'multiplier' fails: residual " +
                              describe(final_check.residual, X0.names()));
  }
  return out;
}

PlanarFirstIntegral first_integral_2d(const PolyVectorField& X, const DarbouxFunction& V,
                                      const IntegrateOptions& opts) {
  if (X.arity() != 2) throw InvalidArgument("planar first integral needs a 2-variable system");
  if (V.arity() != 2) throw ArityMismatch("multiplier arity differs from the system");
  IdentityCheck mult = is_jacobian_multiplier(X, V);
  if (!mult.holds) {
    throw VerificationFailure("V is not an integrating factor: residual " +
                              describe(mult.residual, X.names()));
  }
  PlanarFirstIntegral out;
  std::optional<RatFunc> v = V.as_ratfunc();
  if (!v) {
    out.check = {"closedness of V*(P2,-P1) over -V", mult.residual};
    return out;
  }
  OneForm w({*v * RatFunc(X[1]), -(*v * RatFunc(X[0]))});
  out.form = w;
  out.integral = integrate_closed(w, opts);
  out.check = {"first integral", lie_derivative_log(X, differentiate(*out.integral))};
  if (!out.check.holds()) throw Error("internal error: planar integral fails its check");
  return out;
}

Theorem2Report theorem2_pipeline(const PolyVectorField& X, std::span<const RatFunc> H,
                                 const PipelineOptions& opts) {
  Theorem2Report rep;
  rep.derivation = multiplier_from_rational_integrals(X, H, opts);
  rep.multiplier_check = rep.derivation.identities.back();
  return rep;
}

}  // namespace lvk
