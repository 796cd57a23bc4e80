#include <catch_amalgamated.hpp>

#include <random>

#include "lvk/errors.hpp"
#include "lvk/integrator.hpp"
#include "test_helpers.hpp"

using namespace lvk;
using namespace lvk::testing;

namespace {

const std::vector<std::string> kNames{"x", "y", "z"};

OneForm form(std::initializer_list<const char*> comps, std::size_t n) {
  std::vector<std::string> names(kNames.begin(), kNames.begin() + static_cast<long>(n));
  std::vector<RatFunc> c;
  for (const char* s : comps) c.push_back(eval_ratfunc(*parse_expression(s), names));
  return OneForm(std::move(c));
}

std::vector<std::string> names_for(std::size_t n) {
  return std::vector<std::string>(kNames.begin(), kNames.begin() + static_cast<long>(n));
}

}  // namespace

TEST_CASE("closedness") {
  CHECK(is_closed(form({"1/x", "1/y"}, 2)).closed);
  CHECK(is_closed(form({"-y/x^2", "1/x"}, 2)).closed);
  auto c = is_closed(form({"y", "0"}, 2));
  CHECK_FALSE(c.closed);
  CHECK(c.i == 0);
  CHECK(c.j == 1);
  CHECK(c.residual == RatFunc::constant(2, -1));
  CHECK_THROWS_AS(integrate_closed(form({"y", "0"}, 2)), NotClosedError);
}

TEST_CASE("integration examples") {
  auto n2 = names_for(2), n3 = names_for(3);
  auto r1 = integrate_closed(form({"1/x", "1/y"}, 2));
  CHECK(to_string(r1, n2) == "log(x) + log(y)");
  CHECK(r1.log_groups.size() == 2);
  CHECK(r1.rat_part.is_zero());
  CHECK(to_string(to_darboux(r1), n2) == "x * y");

  auto r2 = integrate_closed(form({"-y/x^2", "1/x"}, 2));
  CHECK(r2.log_groups.empty());
  CHECK(to_string(r2.rat_part, n2) == "y/x");
  CHECK(to_string(to_darboux(r2), n2) == "exp(y/x)");

  auto r3 = integrate_closed(form({"1/x", "-2/y", "-2/z"}, 3));
  CHECK(to_string(r3, n3) == "log(x) - 2*log(y) - 2*log(z)");
  CHECK(to_string(to_darboux(r3), n3) == "x * y^-2 * z^-2");

  auto r4 = integrate_closed(form({"1/(x^2-2)"}, 1));
  REQUIRE(r4.log_groups.size() == 1);
  CHECK(to_string(r4, names_for(1)) == "RootSum(8*t^2-1, t*log(x-4*t))");
  CHECK(differentiate(r4) == form({"1/(x^2-2)"}, 1));

  IntegrationResult empty{{}, RatFunc(2)};
  CHECK(to_darboux(empty).is_one());
  CHECK(to_string(empty, n2) == "0");
}

TEST_CASE("algebraic residues in several variables") {
  auto w = form({"4*y/(x^2-2*y^2)", "-4*x/(x^2-2*y^2)"}, 2);
  REQUIRE(is_closed(w).closed);
  auto r = integrate_closed(w);
  CHECK(r.has_algebraic_groups());
  CHECK(differentiate(r) == w);
  CHECK(log_derivative(to_darboux(r)) == w);

  // Mixed: polynomial, Hermite and both kinds of logarithms.
  auto m = form({"2*x*y + 1/(x^2-3) + 1/(x+y)^2", "x^2 - 2/(x+y)^2 + 1/(x+y)^2 + 1/y"}, 2);
  if (is_closed(m).closed) {
    auto rm = integrate_closed(m);
    CHECK(differentiate(rm) == m);
  }
}

TEST_CASE("elimination order option") {
  auto w = form({"1/x", "-2/y", "-2/z"}, 3);
  IntegrateOptions opts;
  opts.order = {2, 0, 1};
  CHECK(differentiate(integrate_closed(w, opts)) == w);
  opts.order = {0, 0, 1};
  CHECK_THROWS_AS(integrate_closed(w, opts), InvalidArgument);
  IntegrateOptions tight;
  tight.max_degree = 1;
  CHECK_THROWS_AS(integrate_closed(form({"x^3", "y"}, 2), tight), DegreeLimitExceeded);
}

TEST_CASE("differentiation examples") {
  auto n2 = names_for(2);
  IntegrationResult r;
  r.rat_part = RatFunc(2);
  auto logx = integrate_closed(form({"1/x", "1/y"}, 2));
  CHECK(differentiate(logx) == form({"1/x", "1/y"}, 2));
  IntegrationResult yx{{}, eval_ratfunc(*parse_expression("y/x"), n2)};
  CHECK(differentiate(yx) == form({"-y/x^2", "1/x"}, 2));
}

TEST_CASE("round trip: integrate then differentiate random exact forms") {
  // Oracle: the form is built as the closed-form gradient of a random potential.
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> coeff(-3, 3);
  int done = 0;
  for (int i = 0; done < 200; ++i) {
    std::size_t n = 1 + static_cast<std::size_t>(i % 3);
    MultiPoly den = random_poly(rng, n, 2, 2);
    if (den.is_zero()) den = cst(n, 1);
    RatFunc rat(random_poly(rng, n, 3, 3), den);
    OneForm w = gradient(rat);
    int logs = i % 4;
    for (int k = 0; k < logs; ++k) {
      MultiPoly base = random_poly(rng, n, 3, 3);
      if (base.is_constant()) continue;
      Rational c = q(coeff(rng) == 0 ? 1 : coeff(rng), 1 + std::abs(coeff(rng)));
      for (std::size_t j = 0; j < n; ++j) {
        w.components[j] += RatFunc(derivative(base, j), base) * c;
      }
    }
    auto r = integrate_closed(w);
    REQUIRE(differentiate(r) == w);
    ++done;
  }
}

TEST_CASE("round trip: differentiate then integrate random results") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coeff(1, 4);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 1 + static_cast<std::size_t>(i % 3);
    std::vector<DarbouxFactor> f;
    for (int k = 0; k < 3; ++k) {
      MultiPoly b = random_poly(rng, n, 3, 3);
      if (!b.is_constant()) f.push_back({b, q(coeff(rng) * (k % 2 ? -1 : 1), coeff(rng))});
    }
    MultiPoly den = random_poly(rng, n, 2, 2);
    RatFunc arg = den.is_zero() ? RatFunc(n) : RatFunc(random_poly(rng, n, 2, 2), den);
    DarbouxFunction d(arg, f);
    OneForm w = log_derivative(d);
    auto r = integrate_closed(w);
    OneForm back = differentiate(r);
    CHECK(back == w);
    CHECK(log_derivative(to_darboux(r)) == w);
  }
}
