#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dem/dataset.hpp"
#include "helpers.hpp"

using namespace dem;

TEST_CASE("canonical numeric form") {
  CHECK(canonical_numeric("1.50") == "1.5");
  CHECK(canonical_numeric(" 007 ") == "7");
  CHECK(canonical_numeric("-0") == "0");
  CHECK(canonical_numeric("-0.0") == "0");
  CHECK(canonical_numeric(".5") == "0.5");
  CHECK(canonical_numeric("+3.1400") == "3.14");
  CHECK(canonical_numeric("-12.010") == "-12.01");
  CHECK_THROWS_AS(canonical_numeric("abc"), invalid_input);
  CHECK_THROWS_AS(canonical_numeric("1e3"), invalid_input);
  CHECK_THROWS_AS(canonical_numeric(""), invalid_input);
}

TEST_CASE("l1 distance on numeric covariates") {
  auto p = demtest::make_patient("p", Group::A, {1, 2, 3}, 0);
  auto q = demtest::make_patient("q", Group::B, {1, 2, 3}, 1);
  CHECK(l1_distance(p, q) == 0.0);
  auto r = demtest::make_patient("r", Group::B, {1, 3, 5}, 0);
  CHECK(l1_distance(p, r) == 3.0);
}

TEST_CASE("l1 distance in token mode counts mismatching positions") {
  auto tokens = [](const std::vector<std::string>& vals) {
    CovariateVector cv;
    for (const auto& v : vals) cv.push_back(CovariateEntry::make_token(v));
    return cv;
  };
  CHECK(l1_distance(tokens({"m", "65", "ii"}), tokens({"m", "64", "ii"})) == 1.0);
  CHECK(l1_distance(tokens({"m", "65"}), tokens({"m", "65"})) == 0.0);
}

TEST_CASE("dimension mismatch is an error") {
  auto p = demtest::make_patient("p", Group::A, {1, 2}, 0);
  auto q = demtest::make_patient("q", Group::B, {1, 2, 3}, 0);
  CHECK_THROWS_AS(l1_distance(p, q), invalid_input);
}

TEST_CASE("distance zero iff canonical keys equal, symmetry, triangle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> value(0, 3);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<double> a, b, c;
    for (int i = 0; i < 4; ++i) {
      a.push_back(value(rng));
      b.push_back(value(rng));
      c.push_back(value(rng));
    }
    auto pa = demtest::numeric_vector(a);
    auto pb = demtest::numeric_vector(b);
    auto pc = demtest::numeric_vector(c);
    CHECK((l1_distance(pa, pb) == 0.0) == (canonical_key(pa) == canonical_key(pb)));
    CHECK(l1_distance(pa, pb) == l1_distance(pb, pa));
    CHECK(l1_distance(pa, pc) <= l1_distance(pa, pb) + l1_distance(pb, pc) + 1e-12);
  }
}

TEST_CASE("validate_dataset reports violations") {
  Dataset d;
  d.covariate_names = {"x", "y"};
  d.group_a = {demtest::make_patient("p1", Group::A, {1, 2}, 0)};
  d.group_b = {demtest::make_patient("p2", Group::B, {3, 4}, 1)};

  SUBCASE("well-formed dataset has an empty report") {
    CHECK(validate_dataset(d).empty());
  }
  SUBCASE("duplicate id") {
    d.group_b.push_back(demtest::make_patient("p1", Group::B, {5, 6}, 0));
    auto report = validate_dataset(d);
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == Violation::Kind::DuplicateId);
    CHECK(report[0].detail.find("p1") != std::string::npos);
  }
  SUBCASE("dimension mismatch") {
    d.group_a.push_back(demtest::make_patient("p3", Group::A, {1, 2, 3}, 0));
    auto report = validate_dataset(d);
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == Violation::Kind::DimensionMismatch);
    CHECK(report[0].position == 1);
  }
  SUBCASE("outcome outside declared domain") {
    d.outcome_domain = {"0", "1"};
    d.group_a[0].outcome = "maybe";
    auto report = validate_dataset(d);
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == Violation::Kind::OutcomeDomain);
  }
  SUBCASE("validation is pure") {
    d.group_b.push_back(demtest::make_patient("p1", Group::B, {5, 6}, 0));
    auto first = validate_dataset(d);
    auto second = validate_dataset(d);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i].detail == second[i].detail);
  }
}
