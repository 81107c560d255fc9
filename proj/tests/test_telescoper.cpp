#include <doctest.h>

#include "random_support.hpp"
#include "wzcert/errors.hpp"
#include "wzcert/telescoper.hpp"

using namespace wzcert;

namespace {

LinForm V(const std::string& name) { return LinForm::variable(name); }
MultiPoly P(const std::string& name) { return MultiPoly::variable(name); }
MultiPoly C(long c) { return MultiPoly(c); }

HyperTerm binom(const LinForm& a, const LinForm& b, int e = 1) { return HyperTerm(1, {HyperAtom::binomial(a, b, e)}); }

HyperTerm apery_summand() {
  return HyperTerm(1, {HyperAtom::binomial(V("n"), V("k"), 2), HyperAtom::binomial(V("n") + V("k"), V("k"), 2)});
}

Rational apery(long n) {
  Rational s = 0;
  for (long k = 0; k <= n; ++k) {
    Rational b1(binomial(n, k));
    Rational b2(binomial(n + k, k));
    s += b1 * b1 * b2 * b2;
  }
  return s;
}

Rational direct_sum(const HyperTerm& f, long n) {
  Rational s = 0;
  for (long k = 0; k <= n; ++k) s += eval_exact(f, {{"n", n}, {"k", k}});
  return s;
}

/// Recurrence holds for the given sequence on [lo, hi].
template <typename Seq>
void check_recurrence(const Recurrence& rec, Seq seq, long lo, long hi) {
  for (long n = lo; n <= hi; ++n) {
    Rational total = 0;
    for (int j = 0; j <= rec.order(); ++j) {
      total += rec.coefficients[static_cast<std::size_t>(j)].evaluate({{"n", n}}) * seq(n + j);
    }
    CHECK(total == 0);
  }
}

}  // namespace

TEST_CASE("gosper examples") {
  auto r1 = gosper(HyperTerm(1, {HyperAtom::poly(P("k"))}));
  REQUIRE(r1.has_value());
  CHECK(*r1 == RatFunc(P("k") - C(1), C(2)));

  HyperTerm recip(1, {HyperAtom::poly(P("k"), -1), HyperAtom::poly(P("k") + C(1), -1)});
  auto r2 = gosper(recip);
  REQUIRE(r2.has_value());
  CHECK(*r2 == RatFunc(-(P("k") + C(1))));
  HyperTerm g = absorb(recip, *r2);
  CHECK(g == HyperTerm(-1, {HyperAtom::poly(P("k"), -1)}));

  CHECK_FALSE(gosper(HyperTerm(1, {HyperAtom::factorial(V("k"))})).has_value());
  // and no solution appears when the degree is forced higher
  FactoredRatio rho = factored_shift_quotient(HyperTerm(1, {HyperAtom::factorial(V("k"))}), "k");
  CHECK(gosper_degree_bound(rho.numerator(), rho.denominator(), 0, "k") < 0);
}

TEST_CASE("gosper with a symbolic parameter") {
  // sum_k binomial(n,k)(-1)^k has antidifference -(-1)^k binomial(n-1,k-1)... check by verification
  HyperTerm t(1, {HyperAtom::binomial(V("n"), V("k")), HyperAtom::sign(V("k"))});
  auto r = gosper(t, "k");
  REQUIRE(r.has_value());
  HyperTerm g = absorb(t, *r);
  for (long n = 1; n <= 6; ++n) {
    for (long k = 0; k <= n; ++k) {
      Point p{{"n", n}, {"k", k}};
      Point p1{{"n", n}, {"k", k + 1}};
      CHECK(eval_exact(g, p1) - eval_exact(g, p) == eval_exact(t, p));
    }
  }
  CHECK_FALSE(gosper(binom(V("n"), V("k")), "k").has_value());
}

TEST_CASE("dispersion and Gosper form") {
  // rho = (k+1)/k: a = 1, b = 1, c = k
  FactoredRatio rho;
  rho.multiply_factor(P("k") + C(1), 1);
  rho.multiply_factor(P("k"), -1);
  CHECK(dispersion_set(rho, "k") == std::vector<long>{1});
  GosperForm f = gosper_form(rho, "k");
  CHECK(f.a == C(1));
  CHECK(f.b == C(1));
  CHECK(f.c == P("k"));
  // quadratic factors go through the resultant
  FactoredRatio q;
  q.multiply_factor(P("k") * P("k") + C(1), 1);
  q.multiply_factor((P("k") - C(3)) * (P("k") - C(3)) + C(1), -1);
  CHECK(dispersion_set(q, "k") == std::vector<long>{3});
}

TEST_CASE("wz_certificate_find") {
  HyperTerm f = binom(V("n"), V("k")) * HyperTerm(1, {HyperAtom::power(C(2), -V("n"))});
  auto r = wz_certificate_find(f);
  REQUIRE(r.has_value());
  CHECK(*r == RatFunc(-P("k"), C(2) * (P("n") + C(1) - P("k"))));

  HyperTerm ram(1, {HyperAtom::sign(V("k")), HyperAtom::poly(C(4) * P("k") + C(1)),
                    HyperAtom::pochhammer(make_rational(1, 2), V("k"), 2), HyperAtom::pochhammer(-V("n"), V("k")),
                    HyperAtom::factorial(V("k"), -2),
                    HyperAtom::pochhammer(V("n") + LinForm(make_rational(3, 2)), V("k"), -1),
                    HyperAtom::pochhammer(make_rational(3, 2), V("n"), -1), HyperAtom::factorial(V("n"))});
  auto rr = wz_certificate_find(ram);
  REQUIRE(rr.has_value());
  RatFunc printed(C(-2) * P("k") * P("k"), (P("n") - P("k") + C(1)) * (C(4) * P("k") + C(1)));
  CHECK(*rr == printed);

  HyperTerm third = binom(V("n"), V("k")) * HyperTerm(1, {HyperAtom::power(C(3), -V("n"))});
  CHECK_FALSE(wz_certificate_find(third).has_value());
}

TEST_CASE("zeilberger: binomial and central binomial") {
  Recurrence r1 = zeilberger(binom(V("n"), V("k")), 6);
  REQUIRE(r1.order() == 1);
  CHECK(r1.coefficients[0] == C(-2));
  CHECK(r1.coefficients[1] == C(1));
  check_recurrence(r1, [](long n) { return Rational(power(Rational(2), n)); }, 0, 30);

  Recurrence r2 = zeilberger(binom(V("n"), V("k"), 2), 6);
  REQUIRE(r2.order() == 1);
  CHECK(r2.coefficients[1] == P("n") + C(1));
  CHECK(r2.coefficients[0] == C(-2) * (C(2) * P("n") + C(1)));
  check_recurrence(r2, [](long n) { return Rational(binomial(2 * n, n)); }, 0, 30);
}

TEST_CASE("zeilberger: Apery numbers") {
  Recurrence rec = zeilberger(apery_summand(), 6);
  REQUIRE(rec.order() == 2);
  MultiPoly n = P("n");
  MultiPoly c2 = (n + C(2)) * (n + C(2)) * (n + C(2));
  MultiPoly c1 = -(C(2) * n + C(3)) * (C(17) * n * n + C(51) * n + C(39));
  MultiPoly c0 = (n + C(1)) * (n + C(1)) * (n + C(1));
  CHECK(rec.coefficients[2] == c2);
  CHECK(rec.coefficients[1] == c1);
  CHECK(rec.coefficients[0] == c0);
  CHECK(apery(1) == 5);
  CHECK(apery(2) == 73);
  check_recurrence(rec, apery, 0, 48);
  CHECK(direct_sum(apery_summand(), 7) == apery(7));
}

TEST_CASE("zeilberger order minimality") {
  // binomial(n,k) has no order-0 witness but an order-1 one; nothing of
  // order 1 exists for the Apery summand
  CHECK_FALSE(zeilberger_order(apery_summand(), 1).has_value());
  CHECK_THROWS_AS(zeilberger(apery_summand(), 1), NotFound);
}

TEST_CASE("property: Gosper completeness on 100 random telescoping terms") {
  using testing::uniform;
  int recovered = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // t: product of a few proper atoms in k (with a parameter n)
    std::vector<HyperAtom> atoms;
    if (uniform(0, 1) != 0) atoms.push_back(HyperAtom::factorial(V("k") + LinForm(uniform(0, 2)), uniform(0, 1) ? 1 : -1));
    if (uniform(0, 1) != 0) atoms.push_back(HyperAtom::binomial(V("n"), V("k")));
    if (uniform(0, 1) != 0) atoms.push_back(HyperAtom::power(MultiPoly(uniform(2, 3)), V("k")));
    if (uniform(0, 1) != 0) atoms.push_back(HyperAtom::pochhammer(make_rational(uniform(1, 3), 2), V("k")));
    HyperTerm t(1, atoms);
    // random small R
    MultiPoly num = testing::random_nonzero_poly({"k", "n"}, 2, 2);
    MultiPoly den(1);
    if (uniform(0, 1) != 0) den = P("k") + C(uniform(1, 3));
    RatFunc r(num, den);
    // s(k) = G(k+1) - G(k) with G = R t
    RatFunc q = r.shifted("k", 1) * shift_quotient(t, "k") - r;
    if (q.is_zero()) {
      ++recovered;
      continue;
    }
    HyperTerm s = absorb(t, q);
    auto found = gosper(s, "k");
    REQUIRE(found.has_value());
    // G' = found * s must telescope to s
    RatFunc check = found->shifted("k", 1) * shift_quotient(s, "k") - *found;
    CHECK(check == RatFunc(1));
    ++recovered;
  }
  CHECK(recovered == 100);
}
