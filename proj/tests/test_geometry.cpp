#include "geometry.hpp"

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "support/helpers.hpp"

using namespace lim;
using lim::test::q;
using lim::test::qv;
using lim::test::sv;

namespace {

Polytope<Rational> interval_1d(const char* lo, const char* hi) {
  // {(a, 1-a) : lo <= a <= hi} as a plain 2d polytope
  Polytope<Rational> p;
  p.dim = 2;
  p.eqs.push_back({{Rational(1), Rational(1)}, Rel::Eq, Rational(1)});
  p.ineqs.push_back({{Rational(-1), Rational(0)}, Rel::Le, -q(lo)});
  p.ineqs.push_back({{Rational(1), Rational(0)}, Rel::Le, q(hi)});
  return p;
}

// vertex - apex must be a nonnegative combination of the generators
bool on_cone_rays(const ConeRep<Rational>& rep, const Vec<Rational>& vertex) {
  const int d = static_cast<int>(rep.apex.size());
  const int k = static_cast<int>(rep.generators.size());
  Mat<Rational> a(d, Vec<Rational>(k));
  Vec<Rational> b(d);
  for (int t = 0; t < d; ++t) {
    for (int j = 0; j < k; ++j) a[t][j] = rep.generators[j][t];
    b[t] = vertex[t] - rep.apex[t];
  }
  return scan_basic_solutions(a, b).feasible;
}

}  // namespace

TEST_CASE("inverse cone membership on the abc data") {
  Dataset d = fixtures::abc();
  auto cone = inverse_cone<Rational>(d, "Ann,Ben", "Ann", d.outcome_space);
  CHECK(polytope_member(cone, qv({"0.1", "0.1", "0.8"})));
  CHECK(polytope_member(cone, qv({"0.5", "0.1", "0.4"})));  // the apex itself
  CHECK_FALSE(polytope_member(cone, qv({"0.6", "0.1", "0.3"})));  // wrong side of the apex
  CHECK_THROWS_AS(inverse_cone<Rational>(d, "Ann,Ben", "Can", d.outcome_space), Error);
  CHECK_THROWS_AS(inverse_cone<Rational>(d, "Ben,Can", "Ben", d.outcome_space), Error);
}

TEST_CASE("identical choices collapse the cone to its apex") {
  Dataset d;
  d.alternatives = {"x", "y"};
  d.agents = {"a1", "a2"};
  Observation o;
  o.group = {"a1", "a2"};
  o.choices.emplace("a1", sv({"0.4", "0.6"}));
  o.choices.emplace("a2", sv({"0.4", "0.6"}));
  d.observations.push_back(o);
  d.outcome_space = OutcomeSpace::simplex(2);

  auto cone = inverse_cone<Rational>(d, 0, "a1", d.outcome_space);
  CHECK(polytope_member(cone, qv({"0.4", "0.6"})));
  CHECK_FALSE(polytope_member(cone, qv({"0.5", "0.5"})));
  auto verts = enumerate_vertices(cone);
  REQUIRE(verts.size() == 1);
  CHECK(verts[0] == qv({"0.4", "0.6"}));
}

TEST_CASE("one-dimensional cone is a segment") {
  Dataset d = fixtures::two_sports();
  auto cone = inverse_cone<Rational>(d, "Ann,Ben", "Ann", d.outcome_space);
  auto verts = enumerate_vertices(cone);
  REQUIRE(verts.size() == 2);
  CHECK(verts[0] == qv({"0", "1"}));
  CHECK(verts[1] == qv({"0.8", "0.2"}));
}

TEST_CASE("abc cones intersect in exactly the identified point") {
  Dataset d = fixtures::abc();
  std::vector<Polytope<Rational>> cones;
  for (int idx : d.groups_of("Ann"))
    cones.push_back(inverse_cone<Rational>(d, idx, "Ann", d.outcome_space));
  auto st = intersection_status(cones);
  REQUIRE(st.nonempty);
  CHECK(st.dimension == 0);
  CHECK(st.witness == qv({"0.1", "0.1", "0.8"}));
  CHECK(st.relative_interior == qv({"0.1", "0.1", "0.8"}));
  auto verts = enumerate_vertices(intersect(cones));
  REQUIRE(verts.size() == 1);
  CHECK(verts[0] == qv({"0.1", "0.1", "0.8"}));
}

TEST_CASE("one-dimensional cones intersect in a segment") {
  Dataset d = fixtures::two_sports();
  std::vector<Polytope<Rational>> cones;
  for (int idx : d.groups_of("Ann"))
    cones.push_back(inverse_cone<Rational>(d, idx, "Ann", d.outcome_space));
  auto st = intersection_status(cones);
  REQUIRE(st.nonempty);
  CHECK(st.dimension == 1);
  // relative interior lies strictly inside the segment
  CHECK(st.relative_interior[0] > 0);
  CHECK(st.relative_interior[0] < q("0.7"));
  auto verts = enumerate_vertices(intersect(cones));
  REQUIRE(verts.size() == 2);
  CHECK(verts[0] == qv({"0", "1"}));
  CHECK(verts[1] == qv({"0.7", "0.3"}));
}

TEST_CASE("disjoint segments produce a verifiable farkas bundle") {
  std::vector<Polytope<Rational>> ps = {interval_1d("0", "0.3"), interval_1d("0.5", "1")};
  auto st = intersection_status(ps);
  REQUIRE_FALSE(st.nonempty);
  LpOutcome<Rational> cert;
  cert.status = LpStatus::Infeasible;
  cert.farkas = st.farkas;
  CHECK(lp_verify(polytope_lp(intersect(ps)), cert));
}

TEST_CASE("affine independence") {
  CHECK(affinely_independent<Rational>({qv({"0.1", "0.1", "0.8"}), qv({"0.7", "0.1", "0.2"})}));
  CHECK_FALSE(affinely_independent<Rational>({qv({"0.4", "0.6"}), qv({"0.4", "0.6"})}));
  CHECK_FALSE(affinely_independent<Rational>({qv({"1", "0"}), qv({"0", "1"}), qv({"0.5", "0.5"})}));
  CHECK(affinely_independent<Rational>(Mat<Rational>{}));
  CHECK(affinely_independent<Rational>({qv({"1", "0"})}));
}

TEST_CASE("simplex vertices are the unit vectors") {
  auto p = outcome_polytope<Rational>(OutcomeSpace::simplex(3));
  auto verts = enumerate_vertices(p);
  REQUIRE(verts.size() == 3);
  CHECK(verts[0] == qv({"0", "0", "1"}));
  CHECK(verts[1] == qv({"0", "1", "0"}));
  CHECK(verts[2] == qv({"1", "0", "0"}));
}

TEST_CASE("vertex enumeration respects the capacity cap") {
  auto p = outcome_polytope<Rational>(OutcomeSpace::simplex(8));
  CHECK_THROWS_AS(enumerate_vertices(p, 3), Error);
}

TEST_CASE("lifted cone vertices sit on the apex ray structure") {
  Dataset d = fixtures::abc();
  for (const char* agent : {"Ann", "Ben"}) {
    auto rep = cone_rep<Rational>(d, 0, agent);
    auto cone = inverse_cone<Rational>(d, 0, agent, d.outcome_space);
    for (const auto& v : enumerate_vertices(cone)) {
      CHECK(on_cone_rays(rep, v));
      CHECK(polytope_member(cone, v));
    }
  }
}

TEST_CASE("duplicate generators do not fabricate vertices") {
  // Two peers with identical rows: the cone is still the ray from the apex.
  Dataset d;
  d.alternatives = {"x", "y"};
  d.agents = {"a1", "a2", "a3"};
  Observation o;
  o.group = {"a1", "a2", "a3"};
  o.choices.emplace("a1", sv({"0.2", "0.8"}));
  o.choices.emplace("a2", sv({"0.6", "0.4"}));
  o.choices.emplace("a3", sv({"0.6", "0.4"}));
  d.observations.push_back(o);
  d.outcome_space = OutcomeSpace::simplex(2);

  auto cone = inverse_cone<Rational>(d, 0, "a1", d.outcome_space);
  auto verts = enumerate_vertices(cone);
  REQUIRE(verts.size() == 2);
  CHECK(verts[0] == qv({"0", "1"}));
  CHECK(verts[1] == qv({"0.2", "0.8"}));
}

TEST_CASE("mixed-direction generators cover the whole segment") {
  // The agent sits between two peers, so every ideal point is feasible and
  // the midpoint apex must not appear as a spurious vertex.
  Dataset d;
  d.alternatives = {"x", "y"};
  d.agents = {"a1", "a2", "a3"};
  Observation o;
  o.group = {"a1", "a2", "a3"};
  o.choices.emplace("a1", sv({"0.5", "0.5"}));
  o.choices.emplace("a2", sv({"0.2", "0.8"}));
  o.choices.emplace("a3", sv({"0.9", "0.1"}));
  d.observations.push_back(o);
  d.outcome_space = OutcomeSpace::simplex(2);

  auto cone = inverse_cone<Rational>(d, 0, "a1", d.outcome_space);
  auto verts = enumerate_vertices(cone);
  REQUIRE(verts.size() == 2);
  CHECK(verts[0] == qv({"0", "1"}));
  CHECK(verts[1] == qv({"1", "0"}));
}
