#include "lp.hpp"

#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "support/helpers.hpp"
#include "support/lp_oracle.hpp"

using namespace lim;
using lim::test::q;

namespace {

LinearProgram<Rational> box_max() {
  LinearProgram<Rational> lp;
  lp.num_vars = 1;
  lp.add_row({Rational(1)}, Rel::Ge, Rational(0));
  lp.add_row({Rational(1)}, Rel::Le, Rational(1));
  lp.objective = Vec<Rational>{Rational(1)};
  lp.maximize = true;
  return lp;
}

}  // namespace

TEST_CASE("box maximum") {
  auto out = lp_solve(box_max());
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.assignment[0] == 1);
  CHECK(out.value == 1);
  CHECK(lp_verify(box_max(), out));
}

TEST_CASE("contradictory bounds give a checkable farkas certificate") {
  LinearProgram<Rational> lp;
  lp.num_vars = 1;
  lp.add_row({Rational(1)}, Rel::Ge, Rational(1));
  lp.add_row({Rational(1)}, Rel::Le, Rational(0));
  auto out = lp_solve(lp);
  REQUIRE(out.status == LpStatus::Infeasible);
  CHECK(lp_verify(lp, out));

  // sum of y_k * a_k (in <=-normalized form) is 0 while the rhs combination is negative
  Rational combo = out.farkas[0] * Rational(-1) + out.farkas[1] * Rational(1);
  Rational rhs = out.farkas[0] * Rational(-1) + out.farkas[1] * Rational(0);
  CHECK(combo == 0);
  CHECK(rhs < 0);

  SUBCASE("negative multiplier injection is caught") {
    auto bad = out;
    bad.farkas[0] = -bad.farkas[0];
    CHECK_FALSE(lp_verify(lp, bad));
  }
}

TEST_CASE("perturbed assignment fails verification once a binding row breaks") {
  auto lp = box_max();
  auto out = lp_solve(lp);
  out.assignment[0] += q("1/1000");
  out.value += q("1/1000");
  CHECK_FALSE(lp_verify(lp, out));
}

TEST_CASE("unbounded ray") {
  LinearProgram<Rational> lp;
  lp.num_vars = 1;
  lp.add_row({Rational(1)}, Rel::Ge, Rational(0));
  lp.objective = Vec<Rational>{Rational(1)};
  lp.maximize = true;
  auto out = lp_solve(lp);
  REQUIRE(out.status == LpStatus::Unbounded);
  CHECK(sgn(out.ray[0]) > 0);
  CHECK(lp_verify(lp, out));
}

TEST_CASE("equality constraints") {
  LinearProgram<Rational> lp;
  lp.num_vars = 2;
  lp.add_row({Rational(1), Rational(1)}, Rel::Eq, Rational(1));
  lp.lower.assign(2, Rational(0));
  lp.objective = Vec<Rational>{Rational(1), Rational(-1)};
  lp.maximize = true;
  auto out = lp_solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.value == 1);
  CHECK(out.assignment[0] == 1);
  CHECK(out.assignment[1] == 0);
}

TEST_CASE("classic cycling instance terminates under Bland") {
  LinearProgram<Rational> lp;
  lp.num_vars = 4;
  lp.add_row({q("1/4"), q("-60"), q("-1/25"), q("9")}, Rel::Le, Rational(0));
  lp.add_row({q("1/2"), q("-90"), q("-1/50"), q("3")}, Rel::Le, Rational(0));
  lp.add_row({q("0"), q("0"), q("1"), q("0")}, Rel::Le, Rational(1));
  lp.lower.assign(4, Rational(0));
  lp.objective = Vec<Rational>{q("-3/4"), q("150"), q("-1/50"), q("6")};
  lp.maximize = false;
  auto out = lp_solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.value == q("-1/20"));
}

TEST_CASE("feasibility-only outcomes") {
  LinearProgram<Rational> lp;
  lp.num_vars = 2;
  lp.add_row({Rational(1), Rational(2)}, Rel::Le, Rational(4));
  lp.add_row({Rational(1), Rational(0)}, Rel::Ge, Rational(1));
  auto out = lp_solve(lp);
  REQUIRE(out.status == LpStatus::Feasible);
  CHECK(lp_verify(lp, out));
}

TEST_CASE("capacity limit enforced") {
  LinearProgram<Rational> lp;
  lp.num_vars = 1;
  lp.add_row({Rational(1)}, Rel::Le, Rational(1));
  LpLimits limits;
  limits.max_vars = 0;
  CHECK_THROWS_AS(lp_solve(lp, limits), Error);
}

TEST_CASE("random boxed instances agree with the vertex-enumeration oracle") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> nvars(1, 4), nrows(1, 6), coef(-3, 3), den(1, 2);

  int checked_optimal = 0, checked_infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearProgram<Rational> lp;
    lp.num_vars = nvars(rng);
    int m = nrows(rng);
    for (int k = 0; k < m; ++k) {
      Vec<Rational> a;
      for (int i = 0; i < lp.num_vars; ++i) a.push_back(make_rational(coef(rng), den(rng)));
      Rel rel = std::array{Rel::Le, Rel::Ge, Rel::Eq}[rng() % 3];
      lp.add_row(std::move(a), rel, make_rational(coef(rng), den(rng)));
    }
    lp.lower.assign(lp.num_vars, Rational(-2));
    lp.upper.assign(lp.num_vars, Rational(2));
    Vec<Rational> c;
    for (int i = 0; i < lp.num_vars; ++i) c.push_back(make_rational(coef(rng), den(rng)));
    lp.objective = c;
    lp.maximize = rng() % 2 == 0;

    auto reference = lim::test::lp_vertex_oracle(lp);
    auto out = lp_solve(lp);
    if (reference.feasible) {
      REQUIRE(out.status == LpStatus::Optimal);
      REQUIRE(out.value == *reference.optimum);
      ++checked_optimal;
    } else {
      REQUIRE(out.status == LpStatus::Infeasible);
      ++checked_infeasible;
    }
    CHECK(lp_verify(lp, out));
  }
  CHECK(checked_optimal > 50);
  CHECK(checked_infeasible > 50);
}

TEST_CASE("solve is deterministic") {
  auto lp = box_max();
  lp.num_vars = 3;
  lp.rows.clear();
  lp.add_row({Rational(1), Rational(1), Rational(1)}, Rel::Le, Rational(2));
  lp.add_row({Rational(1), Rational(-1), Rational(0)}, Rel::Ge, Rational(-1));
  lp.lower.assign(3, Rational(0));
  lp.objective = Vec<Rational>{Rational(1), Rational(1), Rational(0)};
  auto a = lp_solve(lp);
  auto b = lp_solve(lp);
  CHECK(a.status == b.status);
  CHECK(a.assignment == b.assignment);
}
