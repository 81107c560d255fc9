#include <doctest.h>

#include "random_support.hpp"
#include "wzcert/record.hpp"

using namespace wzcert;

namespace {

CertificateRecord binomial_record() {
  MultiPoly n = MultiPoly::variable("n");
  MultiPoly k = MultiPoly::variable("k");
  CertificateRecord rec;
  rec.identity_hash = "216af58a4c9a529e";
  rec.certificates = {RatFunc(-k, 2 * (n + 1 - k))};
  return rec;
}

void expect_error(const std::string& text, const std::string& fragment) {
  try {
    record_from_json(text);
    FAIL("accepted: " << text);
  } catch (const RecordError& e) {
    CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
  }
}

}  // namespace

TEST_CASE("record round-trip keeps every field") {
  CertificateRecord rec = binomial_record();
  rec.convention = Convention::BackwardNegated;
  CertificateRecord back = record_from_json(record_to_json(rec));
  CHECK(back.kind == CertificateRecord::Kind::WZ);
  CHECK(back.identity_hash == rec.identity_hash);
  CHECK(back.convention == Convention::BackwardNegated);
  REQUIRE(back.certificates.size() == 1);
  CHECK(back.certificates[0] == rec.certificates[0]);
  CHECK(back.engine_version == "0.1.0");
  // compact and pretty encodings parse to the same thing
  CHECK(record_to_json(record_from_json(record_to_json(rec, false)), false) == record_to_json(rec, false));
}

TEST_CASE("recurrence and multi records") {
  MultiPoly n = MultiPoly::variable("n");
  CertificateRecord rec = binomial_record();
  rec.kind = CertificateRecord::Kind::Recurrence;
  rec.recurrence = {-(n + 1), n + 2};
  CertificateRecord back = record_from_json(record_to_json(rec));
  CHECK(back.recurrence == rec.recurrence);
  CHECK(back.as_recurrence().order() == 1);

  CertificateRecord multi = binomial_record();
  multi.kind = CertificateRecord::Kind::Multi;
  multi.certificates.push_back(RatFunc(MultiPoly::variable("k2"), n + 3));
  back = record_from_json(record_to_json(multi));
  CHECK(back.as_multi().rs.size() == 2);
  CHECK(back.certificates == multi.certificates);
}

TEST_CASE("property: random certificates survive the round trip") {
  std::vector<std::string> vars{"n", "k", "x"};
  for (int trial = 0; trial < 200; ++trial) {
    CertificateRecord rec;
    rec.identity_hash = "h" + std::to_string(trial);
    rec.convention = all_conventions()[static_cast<std::size_t>(trial % 4)];
    int r = static_cast<int>(testing::uniform(1, 3));
    for (int i = 0; i < r; ++i) {
      rec.certificates.emplace_back(testing::random_poly(vars, 3, 4), testing::random_nonzero_poly(vars, 2, 3));
    }
    CertificateRecord back = record_from_json(record_to_json(rec, trial % 2 == 0));
    CHECK(back.certificates == rec.certificates);
    CHECK(back.convention == rec.convention);
  }
}

TEST_CASE("malformed records are rejected with a reason") {
  std::string good = record_to_json(binomial_record(), false);
  CHECK_NOTHROW(record_from_json(good));
  expect_error("{", "not valid JSON");
  expect_error("[1,2]", "must be a JSON object");
  expect_error(R"({"convention":"forward","certificates":[]})", "identity_hash");
  expect_error(R"({"identity_hash":"x","convention":"sideways","certificates":[]})", "unknown convention");
  expect_error(R"({"identity_hash":"x","convention":"forward","certificates":[]})", "no certificates");
  expect_error(R"({"identity_hash":"x","convention":"forward","certificates":[{"numerator":[]}]})", "denominator");
  expect_error(R"({"identity_hash":"x","convention":"forward","certificates":[{"numerator":[],"denominator":[]}]})",
               "denominator is zero");
  expect_error(
      R"({"identity_hash":"x","convention":"forward","certificates":[{"numerator":[{"c":"1/0"}],"denominator":[{"c":"1"}]}]})",
      "bad coefficient");
  expect_error(
      R"({"identity_hash":"x","convention":"forward","certificates":[{"numerator":[{"c":"1","e":{"k":-1}}],"denominator":[{"c":"1"}]}]})",
      "exponent");
  expect_error(
      R"({"identity_hash":"x","convention":"forward","r":2,"certificates":[{"numerator":[{"c":"1"}],"denominator":[{"c":"1"}]}]})",
      "does not match");
  expect_error(
      R"({"identity_hash":"x","kind":"recurrence","convention":"forward","certificates":[{"numerator":[{"c":"1"}],"denominator":[{"c":"1"}]}]})",
      "recurrence");
  expect_error(R"({"identity_hash":"x","kind":"magic","convention":"forward","certificates":[]})", "unknown record kind");
}
