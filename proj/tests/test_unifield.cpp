#include <catch_amalgamated.hpp>

#include <random>

#include "lvk/errors.hpp"
#include "lvk/matrix.hpp"
#include "lvk/unipoly.hpp"
#include "test_helpers.hpp"

using namespace lvk;
using namespace lvk::testing;

namespace {

const std::vector<std::string> kNames = xyz_names();

// Sylvester determinant with p's coefficients in the top rows.
RatFunc sylvester_resultant(const UniPoly& p, const UniPoly& q) {
  int m = p.degree(), n = q.degree();
  std::size_t size = static_cast<std::size_t>(m + n);
  RatFuncMatrix s(size, size, RatFunc(p.arity()));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + k) = p.coeff(static_cast<std::size_t>(m - k));
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = q.coeff(static_cast<std::size_t>(n - k));
  return determinant(s, RatFunc::constant(p.arity(), 1));
}

UniPoly in_x(const MultiPoly& p) { return UniPoly::from_poly(p, 0); }

RatFunc ratio(const UniPoly& a, const UniPoly& b) { return a.to_ratfunc() / b.to_ratfunc(); }

RatFunc sum_of_group_derivatives(const std::vector<ResidueGroup>& groups, std::size_t arity) {
  RatFunc acc(arity);
  for (const auto& g : groups) acc += group_log_derivative(g, 0);
  return acc;
}

}  // namespace

TEST_CASE("univariate arithmetic over Q(y)") {
  MultiPoly x = var(2, 0), y = var(2, 1);
  UniPoly a = in_x(x * x - y * y), b = in_x(x - y);
  CHECK(exact_quotient(a, b) == in_x(x + y));
  auto dm = divmod(in_x(x * x + cst(2, 1)), in_x(x + cst(2, 1)));
  CHECK(dm.remainder == in_x(cst(2, 2)));
  CHECK(gcd(a, in_x(x * x + x * y * Rational(2) + y * y)) == in_x(x + y));
  auto xg = extended_gcd(in_x(x * x - cst(2, 2)), in_x(x - y));
  CHECK(xg.gcd.degree() == 0);
  CHECK(xg.s * in_x(x * x - cst(2, 2)) + xg.t * in_x(x - y) == xg.gcd);
  CHECK_THROWS_AS(UniPoly::from_ratfunc(RatFunc(y, x), 0), InvalidArgument);
}

TEST_CASE("Yun squarefree decomposition") {
  MultiPoly x = var(2, 0), y = var(2, 1);
  UniPoly p = in_x((x - y) * (x - y) * (x + cst(2, 1)));
  auto d = squarefree_yun(p);
  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts[0].multiplicity == 1);
  CHECK(d.parts[0].factor == in_x(x + cst(2, 1)));
  CHECK(d.parts[1].multiplicity == 2);
  CHECK(d.parts[1].factor == in_x(x - y));

  UniPoly sq = in_x(x * x * Rational(3) + y);
  auto d2 = squarefree_yun(sq);
  REQUIRE(d2.parts.size() == 1);
  CHECK(d2.parts[0].factor == monic(sq));
  CHECK(d2.unit == RatFunc::constant(2, 3));

  auto d3 = squarefree_yun(UniPoly::constant(2, 0, RatFunc(y)));
  CHECK(d3.parts.empty());
  CHECK(d3.unit == RatFunc(y));
  CHECK_THROWS_AS(squarefree_yun(UniPoly(2, 0)), InvalidArgument);
}

TEST_CASE("Yun reproduces random inputs") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 1 + i % 3;
    MultiPoly a = random_poly(rng, n, 2, 3), b = random_poly(rng, n, 2, 2);
    MultiPoly p = a * b * b * (i % 2 ? a : cst(n, 1));
    if (p.degree_in(0) <= 0) continue;
    UniPoly u = in_x(p);
    auto d = squarefree_yun(u);
    UniPoly prod = UniPoly::constant(n, 0, d.unit);
    for (const auto& part : d.parts) {
      prod = prod * pow(part.factor, static_cast<unsigned>(part.multiplicity));
      CHECK(part.factor.lc() == RatFunc::constant(n, 1));
      CHECK(gcd(part.factor, derivative(part.factor)).degree() == 0);
    }
    CHECK(prod == u);
    for (std::size_t k = 0; k < d.parts.size(); ++k)
      for (std::size_t l = k + 1; l < d.parts.size(); ++l)
        CHECK(gcd(d.parts[k].factor, d.parts[l].factor).degree() == 0);
  }
}

TEST_CASE("resultant examples and Sylvester oracle") {
  MultiPoly x = var(3, 0), a = var(3, 1), b = var(3, 2);
  CHECK(resultant(in_x(x * x - cst(3, 2)), in_x(x - cst(3, 3))) == RatFunc::constant(3, 7));
  UniPoly p = in_x(x * x - a);
  CHECK(resultant(p, p).is_zero());
  CHECK(resultant(in_x(x - a), in_x(x - b)) == RatFunc(a - b));
  CHECK(sylvester_resultant(in_x(x - a), in_x(x - b)) == RatFunc(a - b));

  std::mt19937_64 rng(77);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 1 + i % 3;
    UniPoly f = in_x(random_poly(rng, n, 3, 3)), g = in_x(random_poly(rng, n, 3, 3));
    if (f.is_zero() || g.is_zero() || f.degree() + g.degree() == 0) continue;
    CHECK(resultant(f, g) == sylvester_resultant(f, g));
  }
}

TEST_CASE("Hermite reduction examples") {
  MultiPoly x = var(2, 0), y = var(2, 1);
  UniPoly one = in_x(cst(2, 1));
  auto h1 = hermite_reduce(one, in_x(x * x));
  CHECK(h1.rat_part == -RatFunc(cst(2, 1), x));
  CHECK(h1.reduced_num.is_zero());

  auto h2 = hermite_reduce(one, in_x((x - y) * (x - y)));
  CHECK(h2.rat_part == -RatFunc(cst(2, 1), x - y));
  CHECK(h2.reduced_num.is_zero());

  auto h3 = hermite_reduce(in_x(x * x + cst(2, 1)), in_x(x * x * x));
  CHECK(h3.rat_part == RatFunc(cst(2, -1, 2), x * x));
  CHECK(ratio(h3.reduced_num, h3.reduced_den) == RatFunc(cst(2, 1), x));
  CHECK_THROWS_AS(hermite_reduce(one, UniPoly(2, 0)), ZeroDivision);
}

TEST_CASE("Hermite round trip on random inputs") {
  std::mt19937_64 rng(4242);
  int done = 0;
  for (int i = 0; done < 200; ++i) {
    std::size_t n = 1 + i % 3;
    MultiPoly num = random_poly(rng, n, 4, 3);
    MultiPoly f1 = random_poly(rng, n, 2, 2), f2 = random_poly(rng, n, 2, 2);
    MultiPoly den = f1 * f1 * (i % 2 ? f2 : cst(n, 1));
    if (den.degree_in(0) <= 0 || num.is_zero()) continue;
    RatFunc input(num, den);
    auto [un, ud] = split_ratfunc(input, 0);
    if (ud.degree() <= 0) continue;
    auto h = hermite_reduce(un, ud);
    CHECK(h.reduced_num.degree() < h.reduced_den.degree());
    CHECK(gcd(h.reduced_den, derivative(h.reduced_den)).degree() <= 0);
    RatFunc back = derivative(h.rat_part, 0) + ratio(h.reduced_num, h.reduced_den);
    CHECK(back == input);
    ++done;
  }
}

TEST_CASE("logarithmic part examples") {
  MultiPoly x = var(1, 0);
  std::vector<std::string> names{"x", "t"};

  auto g1 = rothstein_trager(in_x(cst(1, 1)), in_x(x * x - cst(1, 2)));
  REQUIRE(g1.size() == 1);
  CHECK(min_poly_string(g1[0], names) == "8*t^2-1");
  MultiPoly xe = var(2, 0), te = var(2, 1);
  CHECK(g1[0].argument == UniPoly::from_poly(xe - te * Rational(4), 0));
  CHECK(sum_of_group_derivatives(g1, 1) == RatFunc(cst(1, 1), x * x - cst(1, 2)));

  auto g2 = rothstein_trager(in_x(cst(1, 1)), in_x(x));
  REQUIRE(g2.size() == 1);
  CHECK(g2[0].is_rational());
  CHECK(g2[0].residue() == 1);
  CHECK(g2[0].rational_argument() == x);

  auto g3 = rothstein_trager(in_x(x * Rational(2)), in_x(x * x + cst(1, 1)));
  REQUIRE(g3.size() == 1);
  CHECK(g3[0].residue() == 1);
  CHECK(g3[0].rational_argument() == x * x + cst(1, 1));
}

TEST_CASE("logarithmic part with parameters and mixed residues") {
  MultiPoly x = var(2, 0), y = var(2, 1);
  // 1/(x-y) - 2/(x+y) + 3x/(x^2+2) style input with a sqrt(2) group.
  RatFunc f = RatFunc(cst(2, 1), x - y) - RatFunc(cst(2, 2), x + y) +
              RatFunc(x * Rational(3), x * x + cst(2, 2)) + RatFunc(cst(2, 1), x * x - cst(2, 3));
  auto [un, ud] = split_ratfunc(f, 0);
  auto groups = rothstein_trager(un, ud);
  CHECK(sum_of_group_derivatives(groups, 2) == f);
  int rational = 0;
  for (const auto& g : groups) rational += g.is_rational() ? 1 : 0;
  CHECK(rational >= 3);

  // Residues depending on y are rejected.
  RatFunc bad = RatFunc(y, x - cst(2, 1));
  auto [bn, bd] = split_ratfunc(bad, 0);
  CHECK_THROWS_AS(rothstein_trager(bn, bd), NonConstantResidue);
}

TEST_CASE("logarithmic part round trip through traces") {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int i = 0; i < 40; ++i) {
    MultiPoly x = var(1, 0);
    // Irreducible-ish quadratic and cubic with rational residue numerators.
    MultiPoly q = x * x + x * Rational(c(rng)) + cst(1, 2 * (std::abs(c(rng)) + 1) + 1);
    MultiPoly r = x * x * x - cst(1, 2 + std::abs(c(rng)));
    MultiPoly num = x * Rational(c(rng)) + cst(1, c(rng) == 0 ? 1 : c(rng));
    RatFunc f = RatFunc(num, q) + RatFunc(cst(1, 1), r);
    if (f.is_zero()) continue;
    auto [un, ud] = split_ratfunc(f, 0);
    auto groups = rothstein_trager(un, ud);
    CHECK(sum_of_group_derivatives(groups, 1) == f);
  }
}

TEST_CASE("trace sums") {
  MultiPoly t = var(2, 1);
  UniPoly m = UniPoly::from_poly(t * t - cst(2, 1, 8), 1);
  CHECK(trace_of_algebraic(UniPoly::from_poly(t, 1), m).is_zero());
  CHECK(trace_of_algebraic(UniPoly::from_poly(t * t, 1), m) == RatFunc::constant(2, Rational(1, 4)));
  UniPoly cubic = UniPoly::from_poly(t * t * t - t * Rational(5) + cst(2, 7), 1);
  CHECK(trace_of_algebraic(UniPoly::from_poly(cst(2, 1), 1), cubic) == RatFunc::constant(2, 3));
  // power sums of roots of t^3 - 5t + 7: p1 = 0, p2 = 10
  CHECK(trace_of_algebraic(UniPoly::from_poly(t * t, 1), cubic) == RatFunc::constant(2, 10));
}

TEST_CASE("rational roots and residue symbol") {
  std::vector<Rational> c{Rational(-1, 2), Rational(0), Rational(2)};
  auto roots = rational_roots(c);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Rational(-1, 2));
  CHECK(roots[1] == Rational(1, 2));
  std::vector<Rational> irreducible{Rational(-2), Rational(0), Rational(1)};
  CHECK(rational_roots(irreducible).empty());
  std::vector<Rational> with_zero{Rational(0), Rational(-3), Rational(1)};
  auto r0 = rational_roots(with_zero);
  CHECK(r0.size() == 2);
  std::vector<std::string> names{"x", "t"};
  CHECK(residue_symbol(names) == "t1");
  std::vector<std::string> plain{"x", "y"};
  CHECK(residue_symbol(plain) == "t");
}
