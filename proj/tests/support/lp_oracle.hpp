#pragma once

// Brute-force reference for small linear programs: enumerate every basic
// solution of the expanded row system and decide feasibility/optimality by
// exhaustion. Independent of the simplex implementation on purpose; it only
// shares the exact Gaussian elimination helpers.

#include <optional>

#include "linalg.hpp"
#include "lp.hpp"

namespace lim::test {

struct OracleVerdict {
  bool feasible = false;
  std::optional<Rational> optimum;  // present when an objective is given
};

// Sound for pointed feasible regions (generate instances with full box
// bounds) and bounded objectives.
inline OracleVerdict lp_vertex_oracle(const LinearProgram<Rational>& lp) {
  OracleVerdict verdict;
  auto rows = lp_expanded_rows(lp);
  const int n = lp.num_vars;
  const int m = static_cast<int>(rows.size());

  auto feasible_point = [&](const Vec<Rational>& x) {
    for (const auto& r : rows) {
      Rational v = 0;
      for (int i = 0; i < n; ++i) v += r.a[i] * x[i];
      int s = sgn(v - r.rhs);
      bool ok = r.rel == Rel::Le ? s <= 0 : r.rel == Rel::Ge ? s >= 0 : s == 0;
      if (!ok) return false;
    }
    return true;
  };

  for_each_combination(m, n, [&](const std::vector<int>& subset) {
    Mat<Rational> a;
    Vec<Rational> b;
    for (int idx : subset) {
      a.push_back(rows[idx].a);
      b.push_back(rows[idx].rhs);
    }
    if (mat_rank(a) != n) return true;
    auto sol = solve_linear(a, b);
    if (!sol || !feasible_point(*sol)) return true;
    verdict.feasible = true;
    if (lp.objective) {
      Rational val = 0;
      for (int i = 0; i < n; ++i) val += (*lp.objective)[i] * (*sol)[i];
      if (!verdict.optimum || (lp.maximize ? val > *verdict.optimum : val < *verdict.optimum))
        verdict.optimum = val;
    }
    return true;
  });
  return verdict;
}

}  // namespace lim::test
