#include "lvk/multipoly.hpp"

#include <algorithm>
#include <utility>

#include "lvk/errors.hpp"

namespace lvk {

int total_degree(const Exponent& e) {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

int grlex_compare(const Exponent& a, const Exponent& b) {
  int da = lvk::total_degree(a);
  int db = lvk::total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

bool grlex_greater(const Term& a, const Term& b) {
  return grlex_compare(a.exponent, b.exponent) > 0;
}

void check_arity(std::size_t arity) {
  if (arity > kMaxArity) {
    throw InvalidArgument("polynomial arity exceeds " +
                          std::to_string(kMaxArity));
  }
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    unsigned s = unsigned(a[i]) + unsigned(b[i]);
    if (s > std::numeric_limits<std::uint16_t>::max()) {
      throw DegreeLimitExceeded("exponent overflow");
    }
    r[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exponent sub_exponents(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (std::size_t i = 0; i < kMaxArity; ++i) r[i] = a[i] - b[i];
  return r;
}

void require_same_arity(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity() != b.arity()) {
    throw ArityMismatch("polynomial arity mismatch: " +
                        std::to_string(a.arity()) + " vs " +
                        std::to_string(b.arity()));
  }
}

// Sorted-merge of two descending term lists; sign selects a + b or a - b.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b,
                        bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = grlex_compare(a[i].exponent, b[j].exponent);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff)
                            : Rational(a[i].coeff + b[j].coeff);
      if (!lvk::is_zero(s)) out.push_back(Term{a[i].exponent, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(std::size_t arity) : arity_(arity) { check_arity(arity); }

MultiPoly MultiPoly::constant(std::size_t arity, const Rational& value) {
  MultiPoly p(arity);
  if (!lvk::is_zero(value)) p.terms_.push_back(Term{Exponent{}, value});
  return p;
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t index,
                              unsigned power) {
  if (index >= arity) throw InvalidArgument("variable index out of range");
  Exponent e{};
  e[index] = static_cast<std::uint16_t>(power);
  return monomial(arity, e, Rational(1));
}

MultiPoly MultiPoly::monomial(std::size_t arity, const Exponent& e,
                              const Rational& coeff) {
  MultiPoly p(arity);
  for (std::size_t i = arity; i < kMaxArity; ++i) {
    if (e[i] != 0) throw InvalidArgument("exponent beyond arity");
  }
  if (!lvk::is_zero(coeff)) p.terms_.push_back(Term{e, coeff});
  return p;
}

MultiPoly MultiPoly::from_terms(std::size_t arity, std::vector<Term> terms) {
  MultiPoly p(arity);
  std::sort(terms.begin(), terms.end(), grlex_greater);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exponent == t.exponent) {
      p.terms_.back().coeff += t.coeff;
      if (lvk::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    } else if (!lvk::is_zero(t.coeff)) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && lvk::total_degree(terms_[0].exponent) == 0);
}

Rational MultiPoly::constant_term() const {
  if (!terms_.empty() && lvk::total_degree(terms_.back().exponent) == 0) {
    return terms_.back().coeff;
  }
  return Rational(0);
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return kZeroDegree;
  return lvk::total_degree(terms_.front().exponent);
}

int MultiPoly::degree_in(std::size_t var) const {
  if (terms_.empty()) return kZeroDegree;
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.exponent[var]);
  return d;
}

bool MultiPoly::depends_on(std::size_t var) const {
  for (const auto& t : terms_) {
    if (t.exponent[var] != 0) return true;
  }
  return false;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  require_same_arity(*this, other);
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  require_same_arity(*this, other);
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  *this = *this * other;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (lvk::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

MultiPoly multiply_term(const MultiPoly& p, const Term& t) {
  MultiPoly r(p.arity_);
  if (lvk::is_zero(t.coeff)) return r;
  r.terms_.reserve(p.terms_.size());
  // Multiplying by a monomial preserves the term order.
  for (const auto& s : p.terms_) {
    r.terms_.push_back(
        Term{add_exponents(s.exponent, t.exponent), s.coeff * t.coeff});
  }
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_arity(a, b);
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.arity());
  if (a.size() == 1) return multiply_term(b, a.terms_[0]);
  if (b.size() == 1) return multiply_term(a, b.terms_[0]);
  // Heap merge over the rows a_i * b; each row is already sorted.
  const MultiPoly& small = a.size() <= b.size() ? a : b;
  const MultiPoly& big = a.size() <= b.size() ? b : a;
  struct Cursor {
    Exponent exponent;
    std::size_t row;
    std::size_t col;
  };
  auto less = [](const Cursor& u, const Cursor& v) {
    return grlex_compare(u.exponent, v.exponent) < 0;
  };
  std::vector<Cursor> heap;
  heap.reserve(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    heap.push_back(Cursor{add_exponents(small.terms_[i].exponent,
                                        big.terms_[0].exponent),
                          i, 0});
  }
  std::make_heap(heap.begin(), heap.end(), less);
  MultiPoly r(a.arity());
  Rational prod;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), less);
    Cursor c = heap.back();
    heap.pop_back();
    mpq_mul(prod.get_mpq_t(), small.terms_[c.row].coeff.get_mpq_t(),
            big.terms_[c.col].coeff.get_mpq_t());
    if (!r.terms_.empty() && r.terms_.back().exponent == c.exponent) {
      r.terms_.back().coeff += prod;
    } else {
      if (!r.terms_.empty() && lvk::is_zero(r.terms_.back().coeff)) {
        r.terms_.pop_back();
      }
      r.terms_.push_back(Term{c.exponent, prod});
    }
    if (c.col + 1 < big.size()) {
      ++c.col;
      c.exponent = add_exponents(small.terms_[c.row].exponent,
                                 big.terms_[c.col].exponent);
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end(), less);
    }
  }
  if (!r.terms_.empty() && lvk::is_zero(r.terms_.back().coeff)) {
    r.terms_.pop_back();
  }
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponent != b.terms_[i].exponent ||
        a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
  require_same_arity(a, b);
  switch (op) {
    case PolyOp::add:
      return a + b;
    case PolyOp::sub:
      return a - b;
    case PolyOp::mul:
      return a * b;
  }
  throw InvalidArgument("unknown polynomial operation");
}

MultiPoly pow(const MultiPoly& p, unsigned n) {
  MultiPoly result = MultiPoly::constant(p.arity(), Rational(1));
  MultiPoly base = p;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n > 0) base *= base;
  }
  return result;
}

MultiPoly derivative(const MultiPoly& p, std::size_t var) {
  if (var >= p.arity()) throw InvalidArgument("derivative variable out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (t.exponent[var] == 0) continue;
    Term d = t;
    d.coeff *= t.exponent[var];
    d.exponent[var] -= 1;
    out.push_back(std::move(d));
  }
  return MultiPoly::from_terms(p.arity(), std::move(out));
}

std::optional<MultiPoly> exact_div(const MultiPoly& a, const MultiPoly& b) {
  require_same_arity(a, b);
  if (b.is_zero()) throw ZeroDivision("division by the zero polynomial");
  if (a.is_zero()) return MultiPoly(a.arity());
  if (b.is_constant()) return a * Rational(1 / b.leading_coeff());
  for (std::size_t v = 0; v < a.arity(); ++v) {
    if (b.degree_in(v) > a.degree_in(v)) return std::nullopt;
  }
  if (b.total_degree() > a.total_degree()) return std::nullopt;
  const Term& lead = b.leading_term();
  Rational inv_lc = 1 / lead.coeff;
  std::vector<Term> quotient;
  MultiPoly r = a;
  while (!r.is_zero()) {
    const Term& lt = r.leading_term();
    if (!divides(lead.exponent, lt.exponent)) return std::nullopt;
    Term q{sub_exponents(lt.exponent, lead.exponent), lt.coeff * inv_lc};
    r -= multiply_term(b, q);
    quotient.push_back(std::move(q));
  }
  MultiPoly out(a.arity());
  return MultiPoly::from_terms(a.arity(), std::move(quotient));
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = exact_div(a, b);
  if (!q) throw Error("internal error: expected exact polynomial division");
  return *std::move(q);
}

MultiPoly normalized(const MultiPoly& p) {
  if (p.is_zero() || p.leading_coeff() == 1) return p;
  return p * Rational(1 / p.leading_coeff());
}

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var) {
  if (p.is_zero()) return {};
  std::vector<std::vector<Term>> buckets(p.degree_in(var) + 1);
  for (const auto& t : p.terms()) {
    Term s = t;
    s.exponent[var] = 0;
    buckets[t.exponent[var]].push_back(std::move(s));
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MultiPoly::from_terms(p.arity(), std::move(b)));
  return out;
}

MultiPoly from_coefficients(std::span<const MultiPoly> coeffs,
                            std::size_t var) {
  if (coeffs.empty()) return MultiPoly();
  std::size_t arity = coeffs.front().arity();
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& t : coeffs[k].terms()) {
      Term s = t;
      s.exponent[var] = static_cast<std::uint16_t>(s.exponent[var] + k);
      terms.push_back(std::move(s));
    }
  }
  return MultiPoly::from_terms(arity, std::move(terms));
}

namespace {

MultiPoly monomial_gcd(const MultiPoly& m, const MultiPoly& p) {
  Exponent e = m.leading_term().exponent;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < kMaxArity; ++i) {
      e[i] = std::min(e[i], t.exponent[i]);
    }
  }
  return MultiPoly::monomial(m.arity(), e, Rational(1));
}

MultiPoly gcd_of_list(const std::vector<MultiPoly>& polys, std::size_t arity) {
  MultiPoly g(arity);
  for (const auto& c : polys) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

// Dense coefficients (ascending) of p in `var` with every other variable
// replaced by point[v].
std::vector<Rational> univariate_image(const MultiPoly& p, std::size_t var,
                                       const std::array<long, kMaxArity>& point) {
  std::vector<Rational> out(static_cast<std::size_t>(p.degree_in(var)) + 1, Rational(0));
  for (const auto& t : p.terms()) {
    Integer v = 1;
    for (std::size_t i = 0; i < p.arity(); ++i) {
      if (i == var || t.exponent[i] == 0) continue;
      Integer pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(std::labs(point[i])),
                    t.exponent[i]);
      if (point[i] < 0 && t.exponent[i] % 2 == 1) pw = -pw;
      v *= pw;
    }
    out[t.exponent[var]] += t.coeff * v;
  }
  while (!out.empty() && lvk::is_zero(out.back())) out.pop_back();
  return out;
}

int univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // a := a mod b
    Rational inv = 1 / b.back();
    while (a.size() >= b.size()) {
      Rational c = a.back() * inv;
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i + 1 < b.size(); ++i) a[shift + i] -= c * b[i];
      a.pop_back();
      while (!a.empty() && lvk::is_zero(a.back())) a.pop_back();
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Upper bound for deg_var gcd(pa, pb) from images at points where neither
// leading coefficient vanishes; -1 when no such point was found.
int gcd_degree_bound(const MultiPoly& pa, const MultiPoly& pb, std::size_t var) {
  int da = pa.degree_in(var);
  int db = pb.degree_in(var);
  int best = -1;
  for (long attempt = 0; attempt < 3; ++attempt) {
    std::array<long, kMaxArity> point{};
    for (std::size_t i = 0; i < kMaxArity; ++i) {
      point[i] = (attempt % 2 ? -1 : 1) * static_cast<long>(3 + 5 * i + 11 * attempt);
    }
    auto ia = univariate_image(pa, var, point);
    auto ib = univariate_image(pb, var, point);
    if (static_cast<int>(ia.size()) - 1 != da || static_cast<int>(ib.size()) - 1 != db) continue;
    int d = univariate_gcd_degree(std::move(ia), std::move(ib));
    best = best < 0 ? d : std::min(best, d);
    if (best == 0) break;
  }
  return best;
}

MultiPoly primitive_gcd_prs(const MultiPoly& pa, const MultiPoly& pb,
                            std::size_t var) {
  if (gcd_degree_bound(pa, pb, var) == 0) {
    return MultiPoly::constant(pa.arity(), Rational(1));
  }
  prs::Dense a = coefficients_in(pa, var);
  prs::Dense b = coefficients_in(pb, var);
  if (prs::degree(a) < prs::degree(b)) std::swap(a, b);
  std::size_t arity = pa.arity();
  MultiPoly g = MultiPoly::constant(arity, Rational(1));
  MultiPoly h = MultiPoly::constant(arity, Rational(1));
  while (true) {
    int delta = prs::degree(a) - prs::degree(b);
    prs::Dense r = prs::pseudo_remainder(a, b);
    if (r.empty()) break;
    if (prs::degree(r) == 0) return MultiPoly::constant(arity, Rational(1));
    a = std::move(b);
    MultiPoly divisor = g * pow(h, static_cast<unsigned>(delta));
    for (auto& c : r) c = divide_exact(c, divisor);
    b = std::move(r);
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = divide_exact(pow(g, static_cast<unsigned>(delta)),
                       pow(h, static_cast<unsigned>(delta - 1)));
    }
  }
  MultiPoly last = from_coefficients(b, var);
  return divide_exact(last, gcd_of_list(b, arity));
}

}  // namespace

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
  return gcd_of_list(coefficients_in(p, var), p.arity());
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  require_same_arity(a, b);
  if (a.is_zero() && b.is_zero()) {
    throw InvalidArgument("gcd of two zero polynomials");
  }
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  std::size_t arity = a.arity();
  if (a.is_constant() || b.is_constant()) {
    return MultiPoly::constant(arity, Rational(1));
  }
  if (a.is_monomial()) return monomial_gcd(a, b);
  if (b.is_monomial()) return monomial_gcd(b, a);
  if (a == b) return normalized(a);
  if (b.total_degree() <= a.total_degree()) {
    if (exact_div(a, b)) return normalized(b);
  } else if (exact_div(b, a)) {
    return normalized(a);
  }

  std::size_t var = arity;
  for (std::size_t v = arity; v-- > 0;) {
    if (a.depends_on(v) || b.depends_on(v)) {
      var = v;
      break;
    }
  }
  bool in_a = a.depends_on(var);
  bool in_b = b.depends_on(var);
  if (!in_a) {
    auto cb = coefficients_in(b, var);
    cb.push_back(a);
    return gcd_of_list(cb, arity);
  }
  if (!in_b) {
    auto ca = coefficients_in(a, var);
    ca.push_back(b);
    return gcd_of_list(ca, arity);
  }
  MultiPoly ca = content_in(a, var);
  MultiPoly cb = content_in(b, var);
  MultiPoly c = gcd(ca, cb);
  MultiPoly pa = divide_exact(a, ca);
  MultiPoly pb = divide_exact(b, cb);
  return normalized(c * primitive_gcd_prs(pa, pb, var));
}

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.arity());
  return normalized(divide_exact(a * b, gcd(a, b)));
}

MultiPoly substitute(const MultiPoly& p, std::size_t var,
                     const Rational& value) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term s = t;
    if (s.exponent[var] != 0) {
      Rational f;
      mpz_pow_ui(mpq_numref(f.get_mpq_t()), value.get_num_mpz_t(),
                 s.exponent[var]);
      mpz_pow_ui(mpq_denref(f.get_mpq_t()), value.get_den_mpz_t(),
                 s.exponent[var]);
      s.coeff *= f;
      s.exponent[var] = 0;
    }
    out.push_back(std::move(s));
  }
  return MultiPoly::from_terms(p.arity(), std::move(out));
}

MultiPoly compose(const MultiPoly& p, std::size_t var, const MultiPoly& q) {
  auto coeffs = coefficients_in(p, var);
  MultiPoly r(p.arity());
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    r = r * q + coeffs[k];
  }
  return r;
}

MultiPoly permute_variables(const MultiPoly& p,
                            std::span<const std::size_t> perm) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term s{Exponent{}, t.coeff};
    for (std::size_t i = 0; i < p.arity(); ++i) s.exponent[perm[i]] = t.exponent[i];
    out.push_back(std::move(s));
  }
  return MultiPoly::from_terms(p.arity(), std::move(out));
}

MultiPoly with_arity(const MultiPoly& p, std::size_t arity) {
  for (std::size_t v = arity; v < p.arity(); ++v) {
    if (p.depends_on(v)) {
      throw InvalidArgument("cannot drop a variable the polynomial uses");
    }
  }
  return MultiPoly::from_terms(arity, p.terms());
}

int compare(const MultiPoly& a, const MultiPoly& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = grlex_compare(a.terms()[i].exponent, b.terms()[i].exponent);
    if (c != 0) return c;
    int d = cmp(a.terms()[i].coeff, b.terms()[i].coeff);
    if (d != 0) return d < 0 ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

namespace {

std::string var_name(std::span<const std::string> names, std::size_t i) {
  if (i < names.size()) return names[i];
  return "x" + std::to_string(i + 1);
}

std::string monomial_string(const Exponent& e, std::size_t arity,
                            std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < arity; ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += var_name(names, i);
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const MultiPoly& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    std::string mono = monomial_string(t.exponent, p.arity(), names);
    std::string term;
    if (mono.empty()) {
      term = to_string(t.coeff);
    } else if (t.coeff == 1) {
      term = mono;
    } else if (t.coeff == -1) {
      term = "-" + mono;
    } else {
      term = to_string(t.coeff) + "*" + mono;
    }
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  return out;
}

Integer denominator_lcm(const MultiPoly& p) {
  Integer l = 1;
  for (const auto& t : p.terms()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  return l;
}

namespace prs {

int degree(const Dense& p) {
  return p.empty() ? kZeroDegree : static_cast<int>(p.size()) - 1;
}

void trim(Dense& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Dense pseudo_remainder(const Dense& a, const Dense& b) {
  if (b.empty()) throw ZeroDivision("pseudo-division by zero");
  Dense r = a;
  trim(r);
  int db = degree(b);
  int e = degree(r) - db + 1;
  if (e <= 0) return r;
  const MultiPoly& lcb = b.back();
  while (!r.empty() && degree(r) >= db) {
    MultiPoly lead = r.back();
    std::size_t shift = static_cast<std::size_t>(degree(r) - db);
    for (auto& c : r) c = c * lcb;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= lead * b[i];
    trim(r);
    --e;
  }
  if (e > 0) {
    MultiPoly f = pow(lcb, static_cast<unsigned>(e));
    for (auto& c : r) c = c * f;
  }
  return r;
}

SubresultantChain subresultant_chain(const Dense& a, const Dense& b,
                                     std::size_t arity) {
  if (b.empty()) throw InvalidArgument("subresultant of a zero polynomial");
  if (degree(a) < degree(b)) {
    throw InvalidArgument("subresultant chain requires deg a >= deg b");
  }
  const MultiPoly one = MultiPoly::constant(arity, Rational(1));
  std::vector<Dense> R{a, b};
  // Index 0 of the scalar sequences is unused so indices match R.
  std::vector<MultiPoly> gamma{one, -one};
  std::vector<int> delta{0, degree(a) - degree(b)};
  std::vector<MultiPoly> beta{one, (delta[1] + 1) % 2 == 0 ? one : -one};
  std::vector<MultiPoly> r{one};
  std::size_t i = 1;
  while (!R[i].empty()) {
    r.push_back(R[i].back());
    Dense rem = pseudo_remainder(R[i - 1], R[i]);
    for (auto& c : rem) c = divide_exact(c, beta[i]);
    R.push_back(std::move(rem));
    ++i;
    // gamma_i = (-r_{i-1})^delta_{i-1} * gamma_{i-1}^(1 - delta_{i-1})
    int d = delta[i - 1];
    MultiPoly g;
    if (d == 0) {
      g = gamma[i - 1];
    } else {
      g = divide_exact(pow(-r[i - 1], static_cast<unsigned>(d)),
                       pow(gamma[i - 1], static_cast<unsigned>(d - 1)));
    }
    gamma.push_back(g);
    if (!R[i].empty()) {
      delta.push_back(degree(R[i - 1]) - degree(R[i]));
      beta.push_back(-r[i - 1] * pow(g, static_cast<unsigned>(delta[i])));
    } else {
      delta.push_back(0);
      beta.push_back(one);
    }
  }
  std::size_t k = i - 1;
  SubresultantChain out;
  out.remainders.assign(R.begin(), R.begin() + static_cast<long>(k) + 1);
  if (degree(R[k]) > 0) {
    out.resultant = MultiPoly(arity);
    return out;
  }
  if (degree(R[k - 1]) == 1) {
    out.resultant = R[k][0];
    return out;
  }
  bool negate = false;
  MultiPoly num = one;
  MultiPoly den = one;
  for (std::size_t j = 1; j < k; ++j) {
    if (degree(R[j - 1]) % 2 == 1 && degree(R[j]) % 2 == 1) negate = !negate;
    auto dj = static_cast<unsigned>(degree(R[j]));
    num *= pow(beta[j], dj);
    den *= pow(r[j], static_cast<unsigned>(1 + delta[j]) * dj);
    num *= pow(r[j], static_cast<unsigned>(degree(R[j - 1]) - degree(R[j + 1])));
  }
  num *= pow(R[k][0], static_cast<unsigned>(degree(R[k - 1])));
  MultiPoly res = divide_exact(num, den);
  out.resultant = negate ? -res : res;
  return out;
}

}  // namespace prs

}  // namespace lvk
