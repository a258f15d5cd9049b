#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "numeric.hpp"

namespace lim {

enum class Rel { Le, Eq, Ge };

template <class T>
struct LpRow {
  Vec<T> a;
  Rel rel = Rel::Le;
  T rhs{};
};

// Strict inequalities are deliberately absent: callers reduce them through an
// auxiliary margin variable (maximize eps, boxed) and test eps > 0.
template <class T>
struct LinearProgram {
  int num_vars = 0;
  std::vector<LpRow<T>> rows;
  std::optional<Vec<T>> objective;
  bool maximize = true;
  std::vector<std::optional<T>> lower;  // empty or size num_vars
  std::vector<std::optional<T>> upper;

  LpRow<T>& add_row(Vec<T> a, Rel rel, T rhs) {
    rows.push_back({std::move(a), rel, std::move(rhs)});
    return rows.back();
  }
};

enum class LpStatus { Feasible, Optimal, Infeasible, Unbounded };

// Farkas multipliers are indexed against the expanded row list: lp.rows
// followed by lower bounds (by variable index) then upper bounds. Inequality
// multipliers are nonnegative after >= rows are normalized to <= form, and
// they aggregate to 0 = sum(y_k a_k) with sum(y_k c_k) < 0.
template <class T>
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Vec<T> assignment;
  T value{};
  Vec<T> farkas;
  Vec<T> ray;
};

struct LpLimits {
  int max_vars = 10000;
  int max_rows = 10000;
};

template <class T>
std::vector<LpRow<T>> lp_expanded_rows(const LinearProgram<T>& lp);

// Two-phase primal simplex over the scalar backend, Bland's pivot rule.
// Every outcome is re-checked through lp_verify before being returned.
template <class T>
LpOutcome<T> lp_solve(const LinearProgram<T>& lp, const LpLimits& limits = {});

// Re-derives the outcome's claim by direct arithmetic on the program.
template <class T>
bool lp_verify(const LinearProgram<T>& lp, const LpOutcome<T>& out, std::string* why = nullptr);

extern template LpOutcome<Rational> lp_solve(const LinearProgram<Rational>&, const LpLimits&);
extern template LpOutcome<FloatNum> lp_solve(const LinearProgram<FloatNum>&, const LpLimits&);
extern template bool lp_verify(const LinearProgram<Rational>&, const LpOutcome<Rational>&, std::string*);
extern template bool lp_verify(const LinearProgram<FloatNum>&, const LpOutcome<FloatNum>&, std::string*);
extern template std::vector<LpRow<Rational>> lp_expanded_rows(const LinearProgram<Rational>&);
extern template std::vector<LpRow<FloatNum>> lp_expanded_rows(const LinearProgram<FloatNum>&);

}  // namespace lim
