#include <catch_amalgamated.hpp>

#include <random>

#include "lvk/errors.hpp"
#include "lvk/vector_field.hpp"
#include "test_helpers.hpp"

using namespace lvk;
using namespace lvk::testing;

TEST_CASE("parse simple systems") {
  auto X = parse_system("vars x,y\ndx = x\ndy = y\n");
  CHECK(X.arity() == 2);
  CHECK(X.degree() == 1);
  CHECK(X[0] == var(2, 0));

  auto Y = parse_system("# predator prey\nvars x, y\ndy = y*(x - 1)  # second\ndx = x*(1 - y)\n");
  MultiPoly x = var(2, 0), y = var(2, 1);
  CHECK(Y[0] == x - x * y);
  CHECK(Y[1] == x * y - y);
  CHECK(Y.degree() == 2);

  auto Z = parse_system("vars x\ndx = 1/2*x^2 - 0.25 + 3/4");
  CHECK(to_string(Z[0], Z.names()) == "1/2*x^2+1/2");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_system("vars x,y\ndx = x/y\ndy = y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_system("vars x,y\ndx = x^-1\ndy = y"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x,y\ndx = z\ndy = y"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x,x\ndx = x"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x,y\ndx = x"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x,y\ndx = x\ndx = y\ndy = 1"), ParseError);
  CHECK_THROWS_AS(parse_system("dx = x"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x\ndx = x $ 2"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x\ndx = (x + 1"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x\ndx = x^(1/2)"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x\ndx = exp(x)"), ParseError);
  EvalOptions small{4};
  CHECK_THROWS_AS(parse_system("vars x\ndx = x^5", small), DegreeLimitExceeded);
}

TEST_CASE("divergence and Lie derivative examples") {
  MultiPoly x = var(2, 0), y = var(2, 1);
  PolyVectorField id({"x", "y"}, {x, y});
  PolyVectorField rot({"x", "y"}, {y, -x});
  PolyVectorField lv({"x", "y"}, {x - x * y, x * y - y});
  CHECK(divergence(id) == cst(2, 2));
  CHECK(divergence(rot).is_zero());
  CHECK(divergence(lv) == x - y);
  CHECK(lie_derivative(id, x * y) == x * y * Rational(2));
  CHECK(lie_derivative(id, x - y) == x - y);
  CHECK(lie_derivative(id, cst(2, 7)).is_zero());
  CHECK_THROWS_AS(lie_derivative(id, var(3, 0)), ArityMismatch);

  RatFunc one = RatFunc::constant(2, 1);
  OneForm w1({one / RatFunc(x), -one / RatFunc(y)});
  CHECK(lie_derivative_log(id, w1).is_zero());
  OneForm w2({one / RatFunc(x), one / RatFunc(y)});
  CHECK(lie_derivative_log(id, w2) == RatFunc::constant(2, 2));
  CHECK(lie_derivative_log(id, OneForm({RatFunc(2), RatFunc(2)})).is_zero());
}

TEST_CASE("Leibniz rule and divergence degree on random fields") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 1 + i % 3;
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(n);
    std::vector<MultiPoly> comps;
    for (std::size_t k = 0; k < n; ++k) comps.push_back(random_poly(rng, n, 3, 3));
    PolyVectorField X(names, comps);
    MultiPoly f = random_poly(rng, n, 3, 3), g = random_poly(rng, n, 3, 3);
    CHECK(lie_derivative(X, f * g) == f * lie_derivative(X, g) + g * lie_derivative(X, f));
    MultiPoly d = divergence(X);
    CHECK(d.total_degree() <= X.degree() - 1);
  }
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 1 + i % 4;
    std::vector<std::string> names{"x", "y", "z", "w"};
    names.resize(n);
    std::vector<MultiPoly> comps;
    for (std::size_t k = 0; k < n; ++k) {
      MultiPoly p = random_poly(rng, n, 3, 4);
      comps.push_back(p * q(1 + i % 3, 2 + i % 5));
    }
    PolyVectorField X(names, comps);
    std::string text = print_system(X);
    PolyVectorField Y = parse_system(text);
    CHECK(Y == X);
    CHECK(print_system(Y) == text);
  }
}

TEST_CASE("reordering variables") {
  auto X = parse_system("vars x, y, z\ndx = x*y\ndy = z\ndz = x");
  std::vector<std::size_t> order{2, 0, 1};
  auto Y = reorder(X, order);
  CHECK(Y.names() == std::vector<std::string>{"z", "x", "y"});
  CHECK(print_system(Y) == "vars z, x, y\ndz = x\ndx = x*y\ndy = z\n");
}
