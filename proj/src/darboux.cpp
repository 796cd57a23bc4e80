#include "lvk/darboux.hpp"

#include <algorithm>
#include <map>

#include "lvk/errors.hpp"
#include "lvk/matrix.hpp"

namespace lvk {

DarbouxFunction::DarbouxFunction(std::size_t arity) : arity_(arity), exp_arg_(arity) {}

DarbouxFunction::DarbouxFunction(RatFunc exp_arg, std::vector<DarbouxFactor> factors,
                                 std::vector<ScaledGroup> groups)
    : arity_(exp_arg.arity()),
      exp_arg_(std::move(exp_arg)),
      factors_(std::move(factors)),
      groups_(std::move(groups)) {
  canonicalize();
}

DarbouxFunction DarbouxFunction::from_ratfunc(const RatFunc& f) {
  if (f.is_zero()) throw InvalidArgument("the zero function is not a Darboux function");
  return DarbouxFunction(RatFunc(f.arity()),
                         {DarbouxFactor{f.num(), Rational(1)}, DarbouxFactor{f.den(), Rational(-1)}});
}

DarbouxFunction DarbouxFunction::power_of(const MultiPoly& base, const Rational& exponent) {
  if (base.is_zero()) throw InvalidArgument("zero base in a Darboux function");
  return DarbouxFunction(RatFunc(base.arity()), {DarbouxFactor{base, exponent}});
}

DarbouxFunction DarbouxFunction::exponential(const RatFunc& arg) {
  return DarbouxFunction(arg, {});
}

void DarbouxFunction::canonicalize() {
  const std::size_t n = arity_;
  if (exp_arg_.is_polynomial()) {
    exp_arg_ -= RatFunc::constant(n, exp_arg_.num().constant_term() / exp_arg_.den().constant_term());
  }
  std::vector<DarbouxFactor> split;
  for (const auto& f : factors_) {
    if (f.base.arity() != n) throw ArityMismatch("factor arity differs");
    if (f.base.is_zero()) throw InvalidArgument("zero base in a Darboux function");
    if (is_zero(f.exponent) || f.base.is_constant()) continue;
    Exponent low = f.base.terms().front().exponent;
    for (const auto& t : f.base.terms())
      for (std::size_t i = 0; i < n; ++i) low[i] = std::min(low[i], t.exponent[i]);
    MultiPoly rest = f.base;
    bool has_content = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (low[i] == 0) continue;
      has_content = true;
      split.push_back(DarbouxFactor{MultiPoly::variable(n, i), f.exponent * Rational(low[i])});
    }
    if (has_content) rest = divide_exact(rest, MultiPoly::monomial(n, low, Rational(1)));
    if (!rest.is_constant()) split.push_back(DarbouxFactor{normalized(rest), f.exponent});
  }
  std::sort(split.begin(), split.end(), [](const DarbouxFactor& a, const DarbouxFactor& b) {
    return compare(a.base, b.base) > 0;
  });
  factors_.clear();
  for (auto& f : split) {
    if (!factors_.empty() && factors_.back().base == f.base) {
      factors_.back().exponent += f.exponent;
    } else {
      factors_.push_back(std::move(f));
    }
  }
  std::erase_if(factors_, [](const DarbouxFactor& f) { return is_zero(f.exponent); });

  std::vector<ScaledGroup> merged;
  for (auto& g : groups_) {
    if (g.group.base_arity() != n) throw ArityMismatch("group arity differs");
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const ScaledGroup& m) { return m.group == g.group; });
    if (it != merged.end()) {
      it->scale += g.scale;
    } else {
      merged.push_back(std::move(g));
    }
  }
  std::erase_if(merged, [](const ScaledGroup& g) { return is_zero(g.scale); });
  groups_ = std::move(merged);
}

bool DarbouxFunction::is_rational() const {
  if (!exp_arg_.is_zero() || !groups_.empty()) return false;
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const DarbouxFactor& f) { return f.exponent.get_den() == 1; });
}

std::optional<RatFunc> DarbouxFunction::as_ratfunc() const {
  if (!is_rational()) return std::nullopt;
  RatFunc r = RatFunc::constant(arity_, Rational(1));
  for (const auto& f : factors_) {
    r *= pow(RatFunc(f.base), static_cast<int>(f.exponent.get_num().get_si()));
  }
  return r;
}

DarbouxFunction operator*(const DarbouxFunction& a, const DarbouxFunction& b) {
  if (a.arity_ != b.arity_) throw ArityMismatch("Darboux functions of different arity");
  std::vector<DarbouxFactor> factors = a.factors_;
  factors.insert(factors.end(), b.factors_.begin(), b.factors_.end());
  std::vector<ScaledGroup> groups = a.groups_;
  groups.insert(groups.end(), b.groups_.begin(), b.groups_.end());
  return DarbouxFunction(a.exp_arg_ + b.exp_arg_, std::move(factors), std::move(groups));
}

DarbouxFunction pow(const DarbouxFunction& d, const Rational& q) {
  std::vector<DarbouxFactor> factors = d.factors();
  for (auto& f : factors) f.exponent *= q;
  std::vector<ScaledGroup> groups = d.group_factors();
  for (auto& g : groups) g.scale *= q;
  return DarbouxFunction(d.exp_arg() * q, std::move(factors), std::move(groups));
}

DarbouxFunction inverse(const DarbouxFunction& d) { return pow(d, Rational(-1)); }

namespace {

std::string exponent_suffix(const Rational& e) {
  if (e == 1) return "";
  if (e.get_den() == 1) return "^" + to_string(e);
  return "^(" + to_string(e) + ")";
}

std::string scaled(const Rational& s, const std::string& body) {
  if (s == 1) return body;
  if (s == -1) return "-" + body;
  return to_string(s) + "*" + body;
}

}  // namespace

std::string to_string(const DarbouxFunction& d, std::span<const std::string> names) {
  std::vector<std::string> parts;
  if (!d.exp_arg().is_zero()) parts.push_back("exp(" + to_string(d.exp_arg(), names) + ")");
  for (const auto& f : d.factors()) {
    std::string base = to_string(f.base, names);
    bool atom = f.base.is_monomial() && f.base.total_degree() == 1;
    if (!atom) base = "(" + base + ")";
    parts.push_back(base + exponent_suffix(f.exponent));
  }
  for (const auto& g : d.group_factors()) {
    parts.push_back("exp(" + scaled(g.scale, root_sum_string(g.group, names)) + ")");
  }
  if (parts.empty()) return "1";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " * " + parts[i];
  return out;
}

DarbouxFunction eval_darboux(const Expr& e, std::span<const std::string> names,
                             const EvalOptions& opts) {
  switch (e.kind) {
    case Expr::Kind::mul:
      return eval_darboux(*e.lhs, names, opts) * eval_darboux(*e.rhs, names, opts);
    case Expr::Kind::div:
      return eval_darboux(*e.lhs, names, opts) * inverse(eval_darboux(*e.rhs, names, opts));
    case Expr::Kind::neg:
      return eval_darboux(*e.lhs, names, opts);
    case Expr::Kind::pow:
      return pow(eval_darboux(*e.lhs, names, opts), e.value);
    case Expr::Kind::exp:
      return DarbouxFunction::exponential(eval_ratfunc(*e.lhs, names, opts));
    default:
      break;
  }
  // Sums and atoms must be rational.
  RatFunc r = eval_ratfunc(e, names, opts);
  if (r.is_zero()) throw ParseError("the zero function is not a Darboux function", e.line, e.column);
  return DarbouxFunction::from_ratfunc(r);
}

std::optional<Cofactor> cofactor_of(const PolyVectorField& X, const MultiPoly& f) {
  if (f.is_zero() || f.is_constant()) {
    throw InvalidArgument("a Darboux polynomial must be nonconstant");
  }
  auto k = exact_div(lie_derivative(X, f), f);
  if (!k) return std::nullopt;
  if (k->total_degree() > X.degree() - 1) {
    throw Error("internal error: cofactor degree exceeds m - 1");
  }
  return Cofactor{std::move(*k)};
}

ExponentialVerdict verify_exponential_factor(const PolyVectorField& X, const MultiPoly& g,
                                             const MultiPoly& h) {
  if (h.is_zero()) throw ZeroDivision("exponential factor with zero denominator");
  RatFunc q(g, h);
  ExponentialVerdict v;
  v.value = lie_derivative(X, q);
  if (!v.value.is_polynomial()) {
    v.reason = "X(g/h) is not a polynomial";
  } else if (v.value.num().total_degree() > X.degree() - 1) {
    v.reason = "cofactor degree " + std::to_string(v.value.num().total_degree()) +
               " exceeds m - 1 = " + std::to_string(X.degree() - 1);
  } else {
    v.factor = ExponentialFactor{q.num(), q.den(),
                                 Cofactor{v.value.num() * (1 / v.value.den().constant_term())}};
  }
  return v;
}

OneForm log_derivative(const DarbouxFunction& d) {
  const std::size_t n = d.arity();
  OneForm w;
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc c = derivative(d.exp_arg(), i);
    for (const auto& f : d.factors()) {
      if (!f.base.depends_on(i)) continue;
      c += RatFunc(derivative(f.base, i), f.base) * f.exponent;
    }
    for (const auto& g : d.group_factors()) c += group_log_derivative(g.group, i) * g.scale;
    w.components.push_back(std::move(c));
  }
  return w;
}

IdentityCheck is_jacobian_multiplier(const PolyVectorField& X, const DarbouxFunction& d) {
  RatFunc r = lie_derivative_log(X, log_derivative(d)) + RatFunc(divergence(X));
  return {r.is_zero(), r};
}

IdentityCheck is_first_integral(const PolyVectorField& X, const DarbouxFunction& d) {
  RatFunc r = lie_derivative_log(X, log_derivative(d));
  return {r.is_zero(), r};
}

namespace {

std::vector<Rational> primitive_integer(std::vector<Rational> v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  Integer g = 0;
  for (auto& q : v) {
    q *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  if (g == 0) return v;
  auto first = std::find_if(v.begin(), v.end(), [](const Rational& q) { return !is_zero(q); });
  Rational f(g);
  if (sgn(*first) < 0) f = -f;
  for (auto& q : v) q /= f;
  return v;
}

// Particular solution of minimum Euclidean norm: p - N (N^T N)^{-1} N^T p.
std::vector<Rational> minimum_norm(const std::vector<Rational>& p,
                                   const std::vector<std::vector<Rational>>& basis) {
  if (basis.empty()) return p;
  const std::size_t k = basis.size();
  QMatrix gram(k, k, Rational(0));
  std::vector<Rational> rhs(k, Rational(0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t j = 0; j < p.size(); ++j) rhs[a] += basis[a][j] * p[j];
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t j = 0; j < p.size(); ++j) gram(a, b) += basis[a][j] * basis[b][j];
  }
  auto c = solve_linear(gram, rhs);
  if (!c) throw Error("internal error: singular Gram matrix");
  std::vector<Rational> out = p;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < p.size(); ++j) out[j] -= c->particular[a] * basis[a][j];
  return out;
}

DarbouxFunction combine(std::size_t n, std::span<const MultiPoly> polys,
                        std::span<const RatFunc> exp_args, const std::vector<Rational>& lambda) {
  std::vector<DarbouxFactor> factors;
  RatFunc arg(n);
  for (std::size_t i = 0; i < polys.size(); ++i) factors.push_back({polys[i], lambda[i]});
  for (std::size_t j = 0; j < exp_args.size(); ++j) arg += exp_args[j] * lambda[polys.size() + j];
  return DarbouxFunction(arg, std::move(factors));
}

}  // namespace

SynthesisResult synthesize(const PolyVectorField& X, std::span<const MultiPoly> polys,
                           std::span<const RatFunc> exp_args, SynthesisTarget target) {
  const std::size_t n = X.arity();
  std::vector<MultiPoly> cofactors;
  for (const auto& f : polys) {
    if (f.arity() != n) throw ArityMismatch("Darboux polynomial arity differs from the system");
    if (f.is_constant()) throw VerificationFailure("constant polynomials are not Darboux polynomials");
    auto k = cofactor_of(X, f);
    if (!k) throw VerificationFailure("not a Darboux polynomial: " + to_string(f, X.names()));
    cofactors.push_back(k->poly);
  }
  for (const auto& a : exp_args) {
    if (a.arity() != n) throw ArityMismatch("exponential factor arity differs from the system");
    auto v = verify_exponential_factor(X, a.num(), a.den());
    if (!v.factor) {
      throw VerificationFailure("not an exponential factor: exp(" + to_string(a, X.names()) +
                                "): " + v.reason);
    }
    cofactors.push_back(v.factor->cofactor.poly);
  }
  MultiPoly target_poly = target == SynthesisTarget::jacobian_multiplier ? -divergence(X)
                                                                         : MultiPoly(n);
  std::map<Exponent, std::size_t> rows;
  auto collect = [&](const MultiPoly& p) {
    for (const auto& t : p.terms()) rows.emplace(t.exponent, rows.size());
  };
  for (const auto& k : cofactors) collect(k);
  collect(target_poly);
  const std::size_t unknowns = cofactors.size();
  QMatrix m(rows.size(), unknowns, Rational(0));
  std::vector<Rational> rhs(rows.size(), Rational(0));
  for (std::size_t j = 0; j < unknowns; ++j)
    for (const auto& t : cofactors[j].terms()) m(rows.at(t.exponent), j) = t.coeff;
  for (const auto& t : target_poly.terms()) rhs[rows.at(t.exponent)] = t.coeff;

  SynthesisResult out;
  std::optional<LinearSolution> sol;
  if (unknowns == 0) {
    if (target_poly.is_zero()) sol = LinearSolution{};
  } else {
    sol = solve_linear(m, rhs);
  }
  if (!sol) return out;
  out.consistent = true;
  out.dimension = sol->nullspace.size();
  std::vector<std::vector<Rational>> basis;
  for (const auto& v : sol->nullspace) basis.push_back(primitive_integer(v));
  if (target == SynthesisTarget::jacobian_multiplier) {
    std::vector<Rational> p = minimum_norm(sol->particular, basis);
    out.exponents.push_back(p);
    for (const auto& v : basis) {
      std::vector<Rational> s = p;
      for (std::size_t j = 0; j < s.size(); ++j) s[j] += v[j];
      out.exponents.push_back(std::move(s));
    }
  } else {
    out.exponents = basis;
  }
  for (const auto& lambda : out.exponents) out.functions.push_back(combine(n, polys, exp_args, lambda));
  return out;
}

}  // namespace lvk
