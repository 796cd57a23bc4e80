#include "lvk/unipoly.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "lvk/errors.hpp"

namespace lvk {

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::size_t arity, std::size_t main_var)
    : arity_(arity), var_(main_var) {
  if (main_var >= arity) throw InvalidArgument("main variable out of range");
}

UniPoly::UniPoly(std::size_t arity, std::size_t main_var,
                 std::vector<RatFunc> coeffs)
    : arity_(arity), var_(main_var), coeffs_(std::move(coeffs)) {
  if (main_var >= arity) throw InvalidArgument("main variable out of range");
  for (const auto& c : coeffs_) {
    if (c.arity() != arity) throw ArityMismatch("coefficient arity mismatch");
    if (c.depends_on(main_var)) {
      throw InvalidArgument("coefficient depends on the main variable");
    }
  }
  trim();
}

UniPoly UniPoly::from_poly(const MultiPoly& p, std::size_t main_var) {
  UniPoly u(p.arity(), main_var);
  for (auto& c : coefficients_in(p, main_var)) u.coeffs_.emplace_back(std::move(c));
  u.trim();
  return u;
}

UniPoly UniPoly::from_ratfunc(const RatFunc& f, std::size_t main_var) {
  if (f.den().depends_on(main_var)) {
    throw InvalidArgument("denominator depends on the main variable");
  }
  UniPoly u = from_poly(f.num(), main_var);
  if (!f.den().is_constant()) {
    RatFunc inv(MultiPoly::constant(f.arity(), Rational(1)), f.den());
    for (auto& c : u.coeffs_) c *= inv;
  }
  return u;
}

UniPoly UniPoly::constant(std::size_t arity, std::size_t main_var,
                          const RatFunc& c) {
  return UniPoly(arity, main_var, std::vector<RatFunc>{c});
}

UniPoly UniPoly::monomial(std::size_t arity, std::size_t main_var,
                          const RatFunc& c, unsigned k) {
  std::vector<RatFunc> coeffs(k + 1, RatFunc(arity));
  coeffs[k] = c;
  return UniPoly(arity, main_var, std::move(coeffs));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RatFunc UniPoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : RatFunc(arity_);
}

RatFunc UniPoly::to_ratfunc() const {
  // Horner over a common denominator.
  MultiPoly den = MultiPoly::constant(arity_, Rational(1));
  for (const auto& c : coeffs_) den = lcm(den, c.den());
  MultiPoly x = MultiPoly::variable(arity_, var_);
  MultiPoly num(arity_);
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    num = num * x + coeffs_[k].num() * divide_exact(den, coeffs_[k].den());
  }
  return RatFunc(std::move(num), std::move(den));
}

MultiPoly UniPoly::to_poly() const {
  std::vector<MultiPoly> polys;
  polys.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    if (!c.is_polynomial()) throw InvalidArgument("coefficient is not a polynomial");
    polys.push_back(c.num());
  }
  if (polys.empty()) return MultiPoly(arity_);
  return from_coefficients(polys, var_);
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

namespace {

void require_compatible(const UniPoly& a, const UniPoly& b) {
  if (a.arity() != b.arity() || a.main_var() != b.main_var()) {
    throw ArityMismatch("univariate polynomials over different rings");
  }
}

}  // namespace

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  require_compatible(a, b);
  UniPoly r = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
  const UniPoly& s = a.coeffs_.size() >= b.coeffs_.size() ? b : a;
  for (std::size_t k = 0; k < s.coeffs_.size(); ++k) r.coeffs_[k] += s.coeffs_[k];
  r.trim();
  return r;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  require_compatible(a, b);
  UniPoly r(a.arity_, a.var_);
  if (a.is_zero() || b.is_zero()) return r;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, RatFunc(a.arity_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  r.trim();
  return r;
}

UniPoly operator*(const UniPoly& a, const RatFunc& c) {
  UniPoly r = a;
  for (auto& k : r.coeffs_) k *= c;
  r.trim();
  return r;
}

DivMod divmod(const UniPoly& a, const UniPoly& b) {
  require_compatible(a, b);
  if (b.is_zero()) throw ZeroDivision("univariate division by zero");
  DivMod out{UniPoly(a.arity(), a.main_var()), a};
  if (a.degree() < b.degree()) return out;
  RatFunc inv = RatFunc::constant(a.arity(), Rational(1)) / b.lc();
  std::vector<RatFunc> q(static_cast<std::size_t>(a.degree() - b.degree() + 1),
                         RatFunc(a.arity()));
  std::vector<RatFunc> r = a.coeffs();
  int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    if (r[k].is_zero()) continue;
    RatFunc c = r[k] * inv;
    std::size_t shift = static_cast<std::size_t>(k - db);
    for (int i = 0; i < db; ++i) r[shift + i] -= c * b.coeffs()[i];
    r[k] = RatFunc(a.arity());
    q[shift] = std::move(c);
  }
  r.resize(static_cast<std::size_t>(db));
  out.quotient = UniPoly(a.arity(), a.main_var(), std::move(q));
  out.remainder = UniPoly(a.arity(), a.main_var(), std::move(r));
  return out;
}

UniPoly rem(const UniPoly& a, const UniPoly& b) { return divmod(a, b).remainder; }

UniPoly exact_quotient(const UniPoly& a, const UniPoly& b) {
  auto dm = divmod(a, b);
  if (!dm.remainder.is_zero()) throw Error("internal error: inexact univariate division");
  return dm.quotient;
}

UniPoly derivative(const UniPoly& p) {
  std::vector<RatFunc> d;
  for (std::size_t k = 1; k < p.coeffs().size(); ++k) {
    d.push_back(p.coeffs()[k] * Rational(static_cast<long>(k)));
  }
  return UniPoly(p.arity(), p.main_var(), std::move(d));
}

UniPoly monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  if (p.lc() == RatFunc::constant(p.arity(), Rational(1))) return p;
  return p * (RatFunc::constant(p.arity(), Rational(1)) / p.lc());
}

UniPoly pow(const UniPoly& p, unsigned n) {
  UniPoly r = UniPoly::constant(p.arity(), p.main_var(),
                                RatFunc::constant(p.arity(), Rational(1)));
  for (unsigned i = 0; i < n; ++i) r = r * p;
  return r;
}

namespace {

// p times the lcm of its coefficient denominators, as a polynomial.
MultiPoly cleared(const UniPoly& p) {
  MultiPoly l = MultiPoly::constant(p.arity(), Rational(1));
  for (const auto& c : p.coeffs()) l = lcm(l, c.den());
  return (p * RatFunc(l)).to_poly();
}

}  // namespace

// Over K(y)[x] the gcd is the x-part of the gcd in K[y, x].
UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  require_compatible(a, b);
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.degree() == 0 || b.degree() == 0) {
    return UniPoly::constant(a.arity(), a.main_var(), RatFunc::constant(a.arity(), Rational(1)));
  }
  return monic(UniPoly::from_poly(gcd(cleared(a), cleared(b)), a.main_var()));
}

ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b) {
  require_compatible(a, b);
  const std::size_t n = a.arity();
  const std::size_t v = a.main_var();
  UniPoly one = UniPoly::constant(n, v, RatFunc::constant(n, Rational(1)));
  UniPoly zero(n, v);
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = one, s1 = zero;
  UniPoly t0 = zero, t1 = one;
  while (!r1.is_zero()) {
    DivMod dm = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(dm.remainder);
    UniPoly s2 = s0 - dm.quotient * s1;
    UniPoly t2 = t0 - dm.quotient * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  RatFunc inv = RatFunc::constant(n, Rational(1)) / r0.lc();
  return {r0 * inv, s0 * inv, t0 * inv};
}

std::pair<UniPoly, UniPoly> split_ratfunc(const RatFunc& f, std::size_t var) {
  return {UniPoly::from_poly(f.num(), var), UniPoly::from_poly(f.den(), var)};
}

// ---------------------------------------------------------------------------
// Squarefree decomposition and resultants

SquarefreeDecomposition squarefree_yun(const UniPoly& p) {
  if (p.is_zero()) throw InvalidArgument("squarefree decomposition of zero");
  SquarefreeDecomposition out;
  out.unit = p.lc();
  if (p.degree() == 0) return out;
  // Yun's algorithm on the primitive part in K[y][x], exact divisions only.
  const std::size_t x = p.main_var();
  MultiPoly f = cleared(p);
  f = divide_exact(f, content_in(f, x));
  MultiPoly df = derivative(f, x);
  MultiPoly a = gcd(f, df);
  MultiPoly b = divide_exact(f, a);
  MultiPoly c = divide_exact(df, a);
  MultiPoly d = c - derivative(b, x);
  int i = 1;
  while (b.degree_in(x) > 0) {
    a = gcd(b, d);
    if (a.degree_in(x) > 0) out.parts.push_back(SquarefreePart{monic(UniPoly::from_poly(a, x)), i});
    b = divide_exact(b, a);
    c = divide_exact(d, a);
    d = c - derivative(b, x);
    ++i;
  }
  return out;
}

RatFunc resultant(const UniPoly& p, const UniPoly& q) {
  require_compatible(p, q);
  if (p.is_zero() || q.is_zero()) throw InvalidArgument("resultant of a zero polynomial");
  const std::size_t n = p.arity();
  RatFunc acc = RatFunc::constant(n, Rational(1));
  UniPoly a = p, b = q;
  while (true) {
    int m = a.degree();
    int k = b.degree();
    if (m == 0) return acc * pow(a.lc(), k);
    if (k == 0) return acc * pow(b.lc(), m);
    UniPoly r = rem(a, b);
    if (r.is_zero()) return RatFunc(n);
    // res(a, b) = (-1)^(mk) lc(b)^(m - deg r) res(b, r)
    if ((m * k) % 2 == 1) acc = -acc;
    acc *= pow(b.lc(), m - r.degree());
    a = std::move(b);
    b = std::move(r);
  }
}

// ---------------------------------------------------------------------------
// Hermite reduction

namespace {

RatFunc integrate_polynomial(const UniPoly& p) {
  RatFunc out(p.arity());
  RatFunc x = RatFunc::variable(p.arity(), p.main_var());
  RatFunc power = x;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    if (!p.coeffs()[k].is_zero()) {
      out += p.coeffs()[k] * power * Rational(1, static_cast<long>(k + 1));
    }
    power *= x;
  }
  return out;
}

}  // namespace

HermiteResult hermite_reduce(const UniPoly& num, const UniPoly& den) {
  require_compatible(num, den);
  if (den.is_zero()) throw ZeroDivision("Hermite reduction with zero denominator");
  const std::size_t n = num.arity();
  const std::size_t v = num.main_var();
  DivMod dm = divmod(num, den);
  HermiteResult out{integrate_polynomial(dm.quotient), dm.remainder, monic(den)};
  if (dm.remainder.is_zero()) {
    out.reduced_den =
        UniPoly::constant(n, v, RatFunc::constant(n, Rational(1)));
    return out;
  }
  SquarefreeDecomposition sqf = squarefree_yun(den);
  RatFunc one = RatFunc::constant(n, Rational(1));
  UniPoly a = dm.remainder * (one / sqf.unit);
  UniPoly d = monic(den);
  for (const auto& part : sqf.parts) {
    if (part.multiplicity < 2) continue;
    const UniPoly& V = part.factor;
    UniPoly u = exact_quotient(d, pow(V, static_cast<unsigned>(part.multiplicity)));
    UniPoly uv = u * derivative(V);
    ExtendedGcd xg = extended_gcd(uv, V);
    if (xg.gcd.degree() != 0) {
      throw Error("internal error: squarefree factor shares a root with its cofactor");
    }
    RatFunc Vr = V.to_ratfunc();
    for (int j = part.multiplicity - 1; j >= 1; --j) {
      UniPoly rhs = a * RatFunc::constant(n, Rational(-1, j));
      // B * (U V') + C * V = rhs with deg B < deg V.
      UniPoly B = rem(xg.s * rhs, V);
      UniPoly C = exact_quotient(rhs - B * uv, V);
      out.rat_part += B.to_ratfunc() / pow(Vr, j);
      a = C * RatFunc::constant(n, Rational(-j)) - u * derivative(B);
    }
    d = u * V;
  }
  DivMod tail = divmod(a, d);
  if (!tail.quotient.is_zero()) out.rat_part += integrate_polynomial(tail.quotient);
  out.reduced_num = tail.remainder;
  out.reduced_den = d;
  return out;
}

// ---------------------------------------------------------------------------
// Residue groups

Rational ResidueGroup::residue() const {
  if (!is_rational()) throw InvalidArgument("residue group is not rational");
  return Rational(-min_poly.coeff(0).constant_value() /
                  min_poly.coeff(1).constant_value());
}

MultiPoly ResidueGroup::rational_argument() const {
  if (!is_rational()) throw InvalidArgument("residue group is not rational");
  return with_arity(argument.to_ratfunc().num(), base_arity());
}

namespace {

bool fits_trial_division(const Integer& n) {
  return mpz_sizeinbase(n.get_mpz_t(), 2) <= 40;
}

std::vector<Integer> positive_divisors(Integer n) {
  std::vector<std::pair<Integer, int>> factors;
  for (Integer p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factors) {
    std::size_t count = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

Rational horner(std::span<const Rational> coeffs, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

}  // namespace

std::vector<Rational> rational_roots(std::span<const Rational> coeffs) {
  std::vector<Rational> roots;
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  while (!c.empty() && is_zero(c.back())) c.pop_back();
  if (c.size() < 2) return roots;
  std::size_t low = 0;
  while (is_zero(c[low])) ++low;
  if (low > 0) {
    roots.push_back(Rational(0));
    c.erase(c.begin(), c.begin() + static_cast<long>(low));
    if (c.size() < 2) return roots;
  }
  Integer l = 1;
  for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  Integer a0 = abs_integer(Integer(c.front() * l));
  Integer ad = abs_integer(Integer(c.back() * l));
  if (!fits_trial_division(a0) || !fits_trial_division(ad)) return roots;
  std::vector<Rational> candidates;
  for (const auto& q : positive_divisors(ad)) {
    for (const auto& p : positive_divisors(a0)) {
      Rational r(p, q);
      r.canonicalize();
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  const std::size_t found_zero = roots.size();
  for (const auto& r : candidates) {
    if (roots.size() - found_zero + 1 >= c.size()) break;
    if (is_zero(horner(c, r))) roots.push_back(r);
  }
  return roots;
}

std::string residue_symbol(std::span<const std::string> names) {
  auto taken = [&](const std::string& s) {
    return std::find(names.begin(), names.end(), s) != names.end();
  };
  if (!taken("t")) return "t";
  for (int i = 1;; ++i) {
    std::string s = "t" + std::to_string(i);
    if (!taken(s)) return s;
  }
}

namespace {

RatFunc reduce_mod(const RatFunc& f, const UniPoly& m) {
  return rem(UniPoly::from_ratfunc(f, m.main_var()), m).to_ratfunc();
}

std::vector<Rational> constant_coeffs(const UniPoly& q) {
  std::vector<Rational> out;
  for (const auto& c : q.coeffs()) {
    if (!c.is_constant()) throw NonConstantResidue("residue polynomial has non-constant coefficients");
    out.push_back(c.constant_value());
  }
  return out;
}

// Normalizes coefficients (in x, reduced mod m) to a monic argument,
// splitting m where the leading coefficient is a zero divisor.
void monic_groups(std::vector<RatFunc> coeffs, const UniPoly& m,
                  std::size_t x, std::vector<ResidueGroup>& out) {
  const std::size_t arity = m.arity();
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.size() < 2) {
    throw Error("internal error: logarithm argument degenerated to a constant");
  }
  UniPoly lc = UniPoly::from_ratfunc(coeffs.back(), m.main_var());
  ExtendedGcd xg = extended_gcd(lc, m);
  if (xg.gcd.degree() == 0) {
    RatFunc inv = xg.s.to_ratfunc();
    for (auto& c : coeffs) c = reduce_mod(c * inv, m);
    out.push_back(ResidueGroup{m, UniPoly(arity, x, std::move(coeffs))});
    return;
  }
  UniPoly m1 = xg.gcd;
  UniPoly m2 = exact_quotient(m, m1);
  if (m2.degree() > 0) {
    std::vector<RatFunc> c2;
    for (const auto& c : coeffs) c2.push_back(reduce_mod(c, m2));
    monic_groups(std::move(c2), m2, x, out);
  }
  std::vector<RatFunc> c1;
  for (const auto& c : coeffs) c1.push_back(reduce_mod(c, m1));
  c1.back() = RatFunc(arity);
  monic_groups(std::move(c1), m1, x, out);
}

// gcd in t of p (any arity) with q, whose coefficients are constants. Any
// common factor has constant coefficients, so it divides every coefficient
// of p taken as a polynomial in the other variables.
UniPoly constant_gcd(const MultiPoly& p, std::size_t t, const UniPoly& q) {
  const std::size_t arity = q.arity();
  std::map<Exponent, std::vector<Rational>> slices;
  for (const auto& term : p.terms()) {
    Exponent rest = term.exponent;
    std::size_t k = rest[t];
    rest[t] = 0;
    auto& v = slices[rest];
    if (v.size() <= k) v.resize(k + 1, Rational(0));
    v[k] = term.coeff;
  }
  UniPoly g = q;
  for (const auto& [mono, coeffs] : slices) {
    std::vector<RatFunc> c;
    for (const auto& v : coeffs) c.push_back(RatFunc::constant(arity, v));
    g = gcd(g, UniPoly(arity, t, std::move(c)));
    if (g.degree() <= 0) break;
  }
  return g;
}

void groups_for(const MultiPoly& S, const UniPoly& q, std::size_t x,
                std::vector<ResidueGroup>& out) {
  const std::size_t arity = q.arity();
  const std::size_t t = q.main_var();
  UniPoly rest = q;
  for (const auto& r : rational_roots(constant_coeffs(q))) {
    MultiPoly arg = substitute(S, t, r);
    arg = normalized(divide_exact(arg, content_in(arg, x)));
    UniPoly linear(arity, t,
                   {RatFunc::constant(arity, Rational(-r)),
                    RatFunc::constant(arity, Rational(1))});
    out.push_back(ResidueGroup{linear, UniPoly::from_poly(arg, x)});
    rest = exact_quotient(rest, linear);
  }
  if (rest.degree() <= 0) return;
  std::vector<RatFunc> coeffs;
  for (auto& c : coefficients_in(S, x)) coeffs.push_back(reduce_mod(RatFunc(c), rest));
  monic_groups(std::move(coeffs), rest, x, out);
}

}  // namespace

std::vector<ResidueGroup> rothstein_trager(const UniPoly& num,
                                           const UniPoly& den) {
  require_compatible(num, den);
  if (den.degree() <= 0) throw InvalidArgument("logarithmic part needs a nonconstant denominator");
  if (num.degree() >= den.degree()) throw InvalidArgument("logarithmic part needs a proper fraction");
  std::vector<ResidueGroup> out;
  if (num.is_zero()) return out;
  const std::size_t n = num.arity();
  const std::size_t x = num.main_var();
  const std::size_t t = n;
  const std::size_t ext = n + 1;

  MultiPoly l = MultiPoly::constant(n, Rational(1));
  for (const auto& c : num.coeffs()) l = lcm(l, c.den());
  for (const auto& c : den.coeffs()) l = lcm(l, c.den());
  RatFunc scale(l);
  MultiPoly A = with_arity((num * scale).to_poly(), ext);
  MultiPoly D = with_arity((den * scale).to_poly(), ext);
  MultiPoly B = A - MultiPoly::variable(ext, t) * derivative(D, x);

  auto chain = prs::subresultant_chain(coefficients_in(D, x),
                                       coefficients_in(B, x), ext);
  const MultiPoly& R = chain.resultant;
  if (R.is_zero()) {
    throw InvalidArgument("numerator and denominator share a factor");
  }
  MultiPoly pp = divide_exact(R, content_in(R, t));
  for (std::size_t v = 0; v < n; ++v) {
    if (pp.depends_on(v)) {
      throw NonConstantResidue("residues depend on the remaining variables");
    }
  }
  SquarefreeDecomposition sqf = squarefree_yun(UniPoly::from_poly(pp, t));
  const int deg_d = D.degree_in(x);
  for (const auto& part : sqf.parts) {
    const UniPoly& q = part.factor;
    MultiPoly S;
    if (part.multiplicity == deg_d) {
      S = D;
    } else {
      const prs::Dense* found = nullptr;
      for (std::size_t m = 1; m + 1 < chain.remainders.size() + 1; ++m) {
        if (prs::degree(chain.remainders[m]) == part.multiplicity) {
          found = &chain.remainders[m];
          break;
        }
      }
      if (!found) throw Error("internal error: missing subresultant");
      S = from_coefficients(*found, x);
      // Strip the factors of q at which the leading coefficient vanishes,
      // with their multiplicity in the leading coefficient.
      MultiPoly lc = found->back();
      while (true) {
        UniPoly g = constant_gcd(lc, t, q);
        if (g.degree() <= 0) break;
        MultiPoly gp = g.to_poly();
        S = divide_exact(S, gp);
        lc = divide_exact(lc, gp);
      }
    }
    groups_for(S, q, x, out);
  }
  return out;
}

RatFunc trace_of_algebraic(const UniPoly& p, const UniPoly& m) {
  require_compatible(p, m);
  if (m.degree() < 1) throw InvalidArgument("trace needs a nonconstant minimal polynomial");
  const std::size_t n = m.arity();
  UniPoly mm = monic(m);
  UniPoly r = rem(p, mm);
  const int d = mm.degree();
  // Newton: s_k = -(k a_{d-k} + sum_{i=1}^{k-1} a_{d-i} s_{k-i}).
  std::vector<RatFunc> s(static_cast<std::size_t>(d), RatFunc(n));
  s[0] = RatFunc::constant(n, Rational(d));
  for (int k = 1; k < d; ++k) {
    RatFunc acc = mm.coeff(static_cast<std::size_t>(d - k)) * Rational(k);
    for (int i = 1; i < k; ++i) {
      acc += mm.coeff(static_cast<std::size_t>(d - i)) * s[static_cast<std::size_t>(k - i)];
    }
    s[static_cast<std::size_t>(k)] = -acc;
  }
  RatFunc out(n);
  for (std::size_t k = 0; k < r.coeffs().size(); ++k) out += r.coeffs()[k] * s[k];
  return out;
}

RatFunc group_log_derivative(const ResidueGroup& g, std::size_t var) {
  const std::size_t base = g.base_arity();
  RatFunc arg = g.argument.to_ratfunc();
  RatFunc darg = derivative(arg, var);
  if (g.is_rational()) {
    if (darg.is_zero()) return RatFunc(base);
    return with_arity(darg / arg * g.residue(), base);
  }
  const std::size_t t = g.residue_var();
  UniPoly a = rem(UniPoly::from_ratfunc(arg, t), g.min_poly);
  UniPoly da = rem(UniPoly::from_ratfunc(darg, t), g.min_poly);
  if (da.is_zero()) return RatFunc(base);
  ExtendedGcd xg = extended_gcd(a, g.min_poly);
  if (xg.gcd.degree() != 0) throw Error("internal error: logarithm argument vanishes at a residue");
  UniPoly tv = UniPoly::monomial(g.min_poly.arity(), t,
                                 RatFunc::constant(g.min_poly.arity(), Rational(1)), 1);
  UniPoly integrand = rem(rem(tv * da, g.min_poly) * xg.s, g.min_poly);
  return with_arity(trace_of_algebraic(integrand, g.min_poly), base);
}

std::string min_poly_string(const ResidueGroup& g,
                            std::span<const std::string> names) {
  std::vector<Rational> c = constant_coeffs(g.min_poly);
  Integer l = 1;
  for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  Integer content = 0;
  for (const auto& q : c) {
    Integer z(q * l);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
  }
  Rational f = Rational(l) / Rational(content);
  if (sgn(c.back()) < 0) f = -f;
  MultiPoly p(g.min_poly.arity());
  for (std::size_t k = 0; k < c.size(); ++k) {
    p += MultiPoly::variable(p.arity(), g.residue_var(), static_cast<unsigned>(k)) *
         Rational(c[k] * f);
  }
  return to_string(p, names);
}

std::string root_sum_string(const ResidueGroup& g, std::span<const std::string> names) {
  if (g.is_rational()) {
    Rational r = g.residue();
    std::string log = "log(" + to_string(g.rational_argument(), names) + ")";
    if (r == 1) return log;
    if (r == -1) return "-" + log;
    return to_string(r) + "*" + log;
  }
  std::vector<std::string> ext(names.begin(), names.end());
  ext.push_back(residue_symbol(names));
  return "RootSum(" + min_poly_string(g, ext) + ", " + ext.back() + "*log(" +
         to_string(g.argument.to_ratfunc(), ext) + "))";
}

}  // namespace lvk
