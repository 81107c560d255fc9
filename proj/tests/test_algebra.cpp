#include <doctest.h>

#include "random_support.hpp"
#include "wzcert/errors.hpp"
#include "wzcert/linsolve.hpp"
#include "wzcert/multipoly.hpp"
#include "wzcert/ratfunc.hpp"

using namespace wzcert;
using wzcert::testing::random_nonzero_poly;
using wzcert::testing::random_point;
using wzcert::testing::random_poly;

namespace {

const MultiPoly n = MultiPoly::variable("n");
const MultiPoly k = MultiPoly::variable("k");
const MultiPoly x1 = MultiPoly::variable("x1");
const MultiPoly x2 = MultiPoly::variable("x2");

}  // namespace

TEST_CASE("poly_arith examples") {
  CHECK((n - k) * (n + k) == n * n - k * k);
  MultiPoly p = n * n * k - 3;
  CHECK(p + MultiPoly() == p);
  CHECK((x1 + x2).pow(2) - (x1 * x1 + x2 * x2) == 2 * x1 * x2);
}

TEST_CASE("variables align by name") {
  MultiPoly a = n + 1;  // universe {n}
  MultiPoly b = k * 2;  // universe {k}
  MultiPoly s = a + b;
  CHECK(s.variables() == std::vector<std::string>{"k", "n"});
  CHECK(s - b == a);
  CHECK((s - b).variables().size() == 2);
  CHECK(MultiPoly::variable("z").embedded({"a", "z"}) == MultiPoly::variable("z"));
}

TEST_CASE("poly_gcd examples") {
  CHECK(gcd(n * n - k * k, n - k) == (n - k).primitive());
  CHECK(gcd(2 * k - n - 1, 2 * (n + 1 - k)) == MultiPoly(1));
  CHECK(gcd(k * (k - 1), k) == k);
  CHECK_THROWS_AS(gcd(MultiPoly(), MultiPoly()), Error);
}

TEST_CASE("gcd of multivariate products recovers the common factor") {
  MultiPoly common = n * k + 3 * k - 1;
  MultiPoly a = common * (n - 2 * k + 5) * (k + 1);
  MultiPoly b = common * (n + k) * (k + 1);
  CHECK(gcd(a, b) == (common * (k + 1)).primitive());
}

TEST_CASE("rat_normalize examples") {
  RatFunc r = rat_normalize(n * n - 1, n - 1);
  CHECK(r.numerator() == n + 1);
  CHECK(r.denominator() == MultiPoly(1));

  MultiPoly num = 2 * k - n - 1;
  MultiPoly den = 2 * (n + 1 - k);
  RatFunc u = rat_normalize(num, den);
  // Already reduced: only the denominator unit is moved into the numerator.
  CHECK(u.numerator() * den == num * u.denominator());
  CHECK(u.denominator() == (k - n - 1).primitive());
  CHECK(rat_normalize(u.numerator(), u.denominator()) == u);

  RatFunc z = rat_normalize(MultiPoly(), n + 1);
  CHECK(z.numerator().is_zero());
  CHECK(z.denominator() == MultiPoly(1));

  CHECK_THROWS_AS(rat_normalize(n, MultiPoly()), DivisionByZero);
}

TEST_CASE("rat_specialize examples") {
  RatFunc R(-k, 2 * (n - k + 1));
  RatFunc shifted = rat_specialize(R, {{"k", Assignment::by_shift(1)}});
  CHECK(shifted == RatFunc(-(k + 1), 2 * (n - k)));
  RatFunc at = rat_specialize(R, {{"n", Assignment::by_value(1)}, {"k", Assignment::by_value(1)}});
  CHECK(at == RatFunc(Rational(-1, 2)));
  CHECK(rat_specialize(RatFunc(MultiPoly(1), n), {{"n", Assignment::by_shift(1)}}) ==
        RatFunc(MultiPoly(1), n + 1));
  CHECK_THROWS_AS(
      rat_specialize(R, {{"n", Assignment::by_value(0)}, {"k", Assignment::by_value(1)}}),
      PoleError);
  try {
    R.evaluate({{"n", Rational(0)}, {"k", Rational(1)}});
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.point().at("k") == 1);
  }
}

TEST_CASE("exact division and pseudo-remainder") {
  CHECK(divide_exact(n * n - k * k, n + k) == std::optional<MultiPoly>(n - k));
  CHECK_FALSE(divide_exact(n * n + 1, n + 1).has_value());
  MultiPoly r = pseudo_remainder(n * n + k, n + k, "n");
  CHECK(r == k * k + k);
}

TEST_CASE("printing") {
  CHECK((n - k + 1).to_string({"n", "k"}) == "n - k + 1");
  CHECK(MultiPoly(Rational(-1, 2)).to_string() == "-1/2");
  CHECK((3 * n * n * k - k).to_string({"n"}) == "3*n^2*k - k");
  CHECK(RatFunc(-k, 2 * (n - k + 1)).to_string() == "(1/2*k)/(k - n - 1)");
}

TEST_CASE("determinant and nullspace") {
  PolyMatrix m = {{n, MultiPoly(1)}, {MultiPoly(1), n}};
  CHECK(determinant(m) == n * n - 1);
  PolyMatrix s = {{n, -(n + 1)}};
  auto basis = nullspace(s, 2);
  REQUIRE(basis.size() == 1);
  CHECK(n * basis[0][0] - (n + 1) * basis[0][1] == MultiPoly());
}

TEST_CASE("property: ring axioms, gcd, normalization (500 random cases)") {
  const std::vector<std::string> vars = {"k", "n", "x"};
  for (int trial = 0; trial < 500; ++trial) {
    MultiPoly a = random_poly(vars, 2, 3);
    MultiPoly b = random_poly(vars, 2, 3);
    MultiPoly c = random_nonzero_poly(vars, 2, 3);
    REQUIRE((a + b) * c == a * c + b * c);
    REQUIRE(a + b == b + a);
    REQUIRE(a * (b * c) == (a * b) * c);

    MultiPoly d = random_nonzero_poly(vars, 2, 3);
    MultiPoly g = gcd(a * c, d * c);
    REQUIRE(divide_exact(a * c, g).has_value());
    REQUIRE(divide_exact(d * c, g).has_value());
    REQUIRE(divide_exact(g, c.primitive()).has_value());

    RatFunc lhs = rat_normalize(a * c, d * c);
    RatFunc rhs = rat_normalize(a, d);
    REQUIRE(lhs == rhs);
    REQUIRE(rat_normalize(lhs.numerator(), lhs.denominator()) == lhs);

    // Evaluation commutes with arithmetic at non-pole points.
    RatFunc p(random_poly(vars, 2, 3), random_nonzero_poly(vars, 2, 3));
    RatFunc q(random_poly(vars, 2, 3), random_nonzero_poly(vars, 2, 3));
    Point pt = random_point(vars);
    try {
      Rational pv = p.evaluate(pt);
      Rational qv = q.evaluate(pt);
      REQUIRE((p + q).evaluate(pt) == pv + qv);
      REQUIRE((p * q).evaluate(pt) == pv * qv);
      REQUIRE((p - q).evaluate(pt) == pv - qv);
      if (qv != 0) REQUIRE((p / q).evaluate(pt) == pv / qv);
    } catch (const PoleError&) {
      // Sampled a pole; skip.
    }
  }
}

TEST_CASE("property: structural equality matches pointwise equality") {
  const std::vector<std::string> vars = {"k", "n"};
  for (int trial = 0; trial < 100; ++trial) {
    MultiPoly a = random_poly(vars, 2, 3);
    MultiPoly b = random_nonzero_poly(vars, 2, 3);
    MultiPoly c = random_nonzero_poly(vars, 1, 2);
    RatFunc r1(a * c, b * c);
    RatFunc r2(a, b);
    RatFunc r3(a + b, b);
    bool equal_at_points = true;
    int checked = 0;
    for (int s = 0; s < 40 && checked < 10; ++s) {
      Point pt = random_point(vars);
      try {
        if (r1.evaluate(pt) != r3.evaluate(pt)) equal_at_points = false;
        ++checked;
      } catch (const PoleError&) {
      }
    }
    CHECK(r1 == r2);
    CHECK((r1 == r3) == equal_at_points);
  }
}
