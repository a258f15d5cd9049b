#include "dataset.hpp"

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "support/helpers.hpp"

using namespace lim;
using lim::test::q;

namespace {

const char* kAbcJson = R"({
  "alternatives": ["tennis", "volleyball", "walking"],
  "agents": ["Ann", "Ben", "Can"],
  "observations": [
    {"group": ["Ann", "Ben"],
     "choices": {"Ann": ["0.5", "0.1", "0.4"], "Ben": ["0.7", "0.1", "0.2"]}},
    {"group": ["Ann", "Can"],
     "choices": {"Ann": ["0.1", "0.5", "0.4"], "Can": ["0.1", "0.7", "0.2"]}}
  ]
})";

}  // namespace

TEST_CASE("number parsing is exact") {
  CHECK(parse_number("0.1") == Rational(1, 10));
  CHECK(parse_number("1/2") == Rational(1, 2));
  CHECK(parse_number("-3/4") == Rational(-3, 4));
  CHECK(parse_number("2") == 2);
  CHECK(parse_number("0.125") == Rational(1, 8));
  CHECK(format_number(Rational(7, 10)) == "7/10");
  CHECK(format_number(make_rational(4, 2)) == "2");
  CHECK_THROWS_AS(parse_number("1/0"), Error);
  CHECK_THROWS_AS(parse_number("abc"), Error);
  CHECK_THROWS_AS(parse_number(""), Error);
}

TEST_CASE("abc document parses to the fixture") {
  Dataset d = parse_dataset(kAbcJson);
  CHECK(d == fixtures::abc());
  CHECK(d.observations.size() == 2);
  CHECK(validate_dataset(d).empty());
}

TEST_CASE("row not summing to one is rejected with a location") {
  std::string bad = kAbcJson;
  auto pos = bad.find("\"0.4\"");
  bad.replace(pos, 5, "\"0.3\"");
  try {
    parse_dataset(bad);
    FAIL("expected a number error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Number);
    CHECK(std::string(e.what()).find("Ann") != std::string::npos);
    CHECK(std::string(e.what()).find("9/10") != std::string::npos);
  }
}

TEST_CASE("negative entries and non-integer json numbers are rejected") {
  CHECK_THROWS_AS(parse_dataset(R"({"alternatives":["x","y"],"agents":["a"],
    "observations":[{"group":["a"],"choices":{"a":["-0.5","1.5"]}}]})"),
                  Error);
  CHECK_THROWS_AS(parse_dataset(R"({"alternatives":["x","y"],"agents":["a"],
    "observations":[{"group":["a"],"choices":{"a":[0.5,0.5]}}]})"),
                  Error);
  // exact integers are fine
  Dataset d = parse_dataset(R"({"alternatives":["x","y"],"agents":["a"],
    "observations":[{"group":["a"],"choices":{"a":[1,0]}}]})");
  CHECK(d.observations[0].choices.at("a").coords[0] == 1);
}

TEST_CASE("validate flags duplicate groups and missing rows") {
  Dataset d = fixtures::abc();
  d.observations.push_back(d.observations[0]);
  auto diags = validate_dataset(d);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == "duplicate-group");

  Dataset e = fixtures::abc();
  e.observations[0].choices.erase("Ben");
  diags = validate_dataset(e);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == "missing-row");
}

TEST_CASE("serialization round-trips every fixture exactly") {
  for (const Dataset& d :
       {fixtures::abc(), fixtures::abc_three_semesters(), fixtures::two_sports(),
        fixtures::two_sports_inconsistent(), fixtures::ulm_pair(), fixtures::ulm_triple()}) {
    CHECK(parse_dataset(serialize_dataset(d)) == d);
    CHECK(validate_dataset(d).empty());
  }
}

TEST_CASE("outcome space polytopes are checked on construction") {
  // empty: x <= -1, -x <= 0
  CHECK_THROWS_AS(OutcomeSpace::polytope(1, {{Rational(1)}, {Rational(-1)}},
                                         {Rational(-1), Rational(0)}),
                  Error);
  // unbounded: x >= 0 only
  CHECK_THROWS_AS(OutcomeSpace::polytope(1, {{Rational(-1)}}, {Rational(0)}), Error);
  // a box is fine
  auto y = OutcomeSpace::polytope(1, {{Rational(1)}, {Rational(-1)}}, {Rational(1), Rational(0)});
  CHECK(y.kind == OutcomeSpace::Kind::Polytope);

  Dataset d = parse_dataset(R"({"alternatives":["x","y"],"agents":["a"],
    "observations":[{"group":["a"],"choices":{"a":["1/2","1/2"]}}],
    "outcome_space":{"kind":"polytope",
      "A":[["1","0"],["-1","0"],["0","1"],["0","-1"]],
      "c":["1","0","1","0"]}})");
  CHECK(d.outcome_space.kind == OutcomeSpace::Kind::Polytope);
  CHECK(parse_dataset(serialize_dataset(d)) == d);
}

TEST_CASE("group keys and lookups") {
  Dataset d = fixtures::abc();
  CHECK(d.observations[0].key() == "Ann,Ben");
  CHECK(d.find_group("Ann,Can") == 1);
  CHECK(d.find_group("Ben,Can") == -1);
  CHECK(d.groups_of("Ann") == std::vector<int>{0, 1});
  CHECK(d.groups_of("Ben") == std::vector<int>{0});
}
