#include <doctest.h>

#include <algorithm>

#include "random_support.hpp"
#include "wzcert/errors.hpp"
#include "wzcert/oracle.hpp"
#include "wzcert/telescoper.hpp"

using namespace wzcert;

namespace {

LinForm V(const std::string& name) { return LinForm::variable(name); }
MultiPoly P(const std::string& name) { return MultiPoly::variable(name); }

HyperTerm ramanujan() {
  return HyperTerm(1, {HyperAtom::sign(V("k")), HyperAtom::poly(MultiPoly(4) * P("k") + MultiPoly(1)),
                       HyperAtom::pochhammer(make_rational(1, 2), V("k"), 2), HyperAtom::pochhammer(-V("n"), V("k")),
                       HyperAtom::factorial(V("k"), -2),
                       HyperAtom::pochhammer(V("n") + LinForm(make_rational(3, 2)), V("k"), -1)});
}

HyperTerm ramanujan_rhs() {
  return HyperTerm(1, {HyperAtom::pochhammer(make_rational(3, 2), V("n")), HyperAtom::factorial(V("n"), -1)});
}

}  // namespace

TEST_CASE("exact_sum examples") {
  HyperTerm b(1, {HyperAtom::binomial(V("n"), V("k"))});
  CHECK(exact_sum(b, {SumRange{"k", LinForm(0), LinForm(3)}}, {{"n", 3}}) == 8);
  CHECK(exact_sum(b, {SumRange{"k", {}, {}}}, {{"n", 3}}) == 8);
  CHECK(resolve_box(b, {SumRange{"k", {}, {}}}, {{"n", 5}}) == std::vector<std::pair<long, long>>{{0, 5}});

  Identity ram;
  ram.summand = ramanujan();
  ram.rhs = {ramanujan_rhs()};
  ram.sums = {SumRange{"k", {}, {}}};
  CHECK(exact_sum(ram.summand, ram.sums, {{"n", 1}}) == make_rational(3, 2));
  for (long n = 0; n <= 15; ++n) CHECK(identity_defect(ram, {{"n", n}}) == 0);

  HyperTerm tri(1, {HyperAtom::factorial(V("n")), HyperAtom::factorial(V("k1"), -1), HyperAtom::factorial(V("k2"), -1),
                    HyperAtom::factorial(V("n") - V("k1") - V("k2"), -1), HyperAtom::power(P("x"), V("k1")),
                    HyperAtom::power(P("y"), V("k2")), HyperAtom::power(P("z"), V("n") - V("k1") - V("k2")),
                    HyperAtom::power(P("x") + P("y") + P("z"), -V("n"))});
  std::vector<SumRange> two{SumRange{"k1", {}, {}}, SumRange{"k2", {}, {}}};
  CHECK(exact_sum(tri, two, {{"n", 2}, {"x", 1}, {"y", 1}, {"z", 1}}) == 1);
  // explicit inner range depending on the outer variable
  std::vector<SumRange> nested{SumRange{"k1", LinForm(0), V("n")}, SumRange{"k2", LinForm(0), V("n") - V("k1")}};
  CHECK(exact_sum(tri, nested, {{"n", 4}, {"x", 1}, {"y", 2}, {"z", 3}}) == 1);

  HyperTerm geometric(1, {HyperAtom::power(MultiPoly(2), -V("k"))});
  CHECK_THROWS_AS(exact_sum(geometric, {SumRange{"k", {}, {}}}, {{"n", 1}}), Error);
}

TEST_CASE("Ahlgren-Ono identity") {
  CHECK(harmonic(0) == 0);
  CHECK(harmonic(3) == make_rational(11, 6));
  for (long n = 1; n <= 50; ++n) CHECK(ahlgren_ono_eval(n) == 0);
}

TEST_CASE("Apery numbers and the Beukers congruence") {
  CHECK(apery_number(0) == 1);
  CHECK(apery_number(1) == 5);
  CHECK(apery_number(2) == 73);
  QSeries s = eta_product(20);
  CHECK(s[0] == 0);
  CHECK(s[1] == 1);
  CHECK(s[2] == 0);
  CHECK(s[3] == -4);
  CHECK(s[4] == 0);
  CHECK(s[5] == -2);
  CHECK(s[7] == 24);
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    BeukersReport r = beukers_check(p, 20);
    INFO("p = " << p);
    CHECK(r.congruent);
  }
  BeukersReport r3 = beukers_check(3, 20);
  CHECK(r3.apery_value == 5);
  CHECK(r3.a_value == -4);
  CHECK(beukers_check(5, 20).apery_value == 73);
  CHECK(beukers_check(5, 20).a_value == -2);
  CHECK_THROWS_AS(beukers_check(23, 20), Error);
}

TEST_CASE("property: q-series truncation is order independent") {
  long order = 30;
  std::vector<QSeries> factors;
  for (long m = 1; m <= 8; ++m) factors.push_back(QSeries::one_minus(m, order) * QSeries::one_minus(2 * m, order));
  QSeries forward = QSeries::one(order);
  for (const auto& f : factors) forward = forward * f;
  for (int trial = 0; trial < 5; ++trial) {
    auto shuffled = factors;
    std::shuffle(shuffled.begin(), shuffled.end(), testing::rng());
    QSeries other = QSeries::one(order);
    for (const auto& f : shuffled) other = other * f;
    CHECK(other == forward);
  }
}

TEST_CASE("Apery numbers satisfy the recurrence from the telescoper") {
  HyperTerm f(1, {HyperAtom::binomial(V("n"), V("k"), 2), HyperAtom::binomial(V("n") + V("k"), V("k"), 2)});
  Recurrence rec = zeilberger(f, 4);
  REQUIRE(rec.order() == 2);
  for (long n = 0; n + 2 <= 50; ++n) {
    Rational total = 0;
    for (int j = 0; j <= 2; ++j) {
      total += rec.coefficients[static_cast<std::size_t>(j)].evaluate({{"n", n}}) * Rational(apery_number(n + j));
    }
    CHECK(total == 0);
  }
}

TEST_CASE("sqrt 2 descent") {
  Descent d = sqrt2_descent(3, 2);
  CHECK(d.a == 1);
  CHECK(d.b == 1);
  CHECK(d.invariant_holds);
  CHECK(Integer(1) - 2 != 0);  // (1,1) is not a solution
  CHECK(sqrt2_invariant_symbolic());
  auto chain = descent_chain(17, 12);
  CHECK(chain.back() == std::pair<Integer, Integer>{1, 1});
  CHECK(chain.size() == 4);
  for (int trial = 0; trial < 200; ++trial) {
    Integer A = testing::uniform(1, 100000);
    Integer B = testing::uniform(1, 100000);
    CHECK(sqrt2_descent(A, B).invariant_holds);
  }
}

TEST_CASE("parable") {
  for (long n = 1; n <= 8; ++n) CHECK(parable_check(n));
}
