#include "lp.hpp"

#include <algorithm>

#include "errors.hpp"

namespace lim {

template <class T>
std::vector<LpRow<T>> lp_expanded_rows(const LinearProgram<T>& lp) {
  std::vector<LpRow<T>> rows = lp.rows;
  auto unit = [&](int i) {
    Vec<T> a(lp.num_vars, T{});
    a[i] = NumOps<T>::from_rational(1);
    return a;
  };
  if (!lp.lower.empty())
    for (int i = 0; i < lp.num_vars; ++i)
      if (lp.lower[i]) rows.push_back({unit(i), Rel::Ge, *lp.lower[i]});
  if (!lp.upper.empty())
    for (int i = 0; i < lp.num_vars; ++i)
      if (lp.upper[i]) rows.push_back({unit(i), Rel::Le, *lp.upper[i]});
  return rows;
}

namespace {

// Dense tableau simplex on the standard form  min c.z  s.t.  M z = b, z >= 0.
// Columns: n "plus" vars, n "minus" vars (free split), slacks, artificials.
template <class T>
class Simplex {
public:
  Simplex(const LinearProgram<T>& lp, const LpLimits& limits) : lp_(lp) {
    rows_ = lp_expanded_rows(lp);
    if (lp.num_vars > limits.max_vars || static_cast<int>(rows_.size()) > limits.max_rows)
      throw Error(ErrorCode::Capacity, "linear program exceeds configured limits");
    n_ = lp.num_vars;
    m_ = static_cast<int>(rows_.size());
  }

  LpOutcome<T> run() {
    build();
    phase1();
    if (NumOps<T>::sign(objective_value()) > 0) return infeasible_outcome();
    drive_out_artificials();
    if (!lp_.objective) {
      LpOutcome<T> out;
      out.status = LpStatus::Feasible;
      out.assignment = current_x();
      return out;
    }
    return phase2();
  }

private:
  static T one() { return NumOps<T>::from_rational(1); }

  void build() {
    num_slack_ = 0;
    for (const auto& r : rows_)
      if (r.rel != Rel::Eq) ++num_slack_;
    cols_ = 2 * n_ + num_slack_;  // artificials appended below
    tab_.assign(m_, Vec<T>(cols_, T{}));
    b_.assign(m_, T{});
    flip_.assign(m_, false);

    int slack = 0;
    slack_col_of_row_.assign(m_, -1);
    for (int k = 0; k < m_; ++k) {
      const auto& r = rows_[k];
      for (int i = 0; i < n_; ++i) {
        tab_[k][i] = r.a[i];
        tab_[k][n_ + i] = -r.a[i];
      }
      if (r.rel != Rel::Eq) {
        int col = 2 * n_ + slack++;
        tab_[k][col] = r.rel == Rel::Le ? one() : -one();
        slack_col_of_row_[k] = col;
      }
      b_[k] = r.rhs;
      if (NumOps<T>::sign(b_[k]) < 0) {
        flip_[k] = true;
        b_[k] = -b_[k];
        for (auto& v : tab_[k]) v = -v;
      }
    }

    // Initial basis: slack when usable after sign normalization, else artificial.
    basis_.assign(m_, -1);
    art_col_of_row_.assign(m_, -1);
    for (int k = 0; k < m_; ++k) {
      int sc = slack_col_of_row_[k];
      if (sc >= 0 && NumOps<T>::sign(tab_[k][sc] - one()) == 0) {
        basis_[k] = sc;
      } else {
        int col = cols_++;
        for (int r = 0; r < m_; ++r) tab_[r].push_back(r == k ? one() : T{});
        basis_[k] = col;
        art_col_of_row_[k] = col;
      }
    }
    first_art_col_ = 2 * n_ + num_slack_;
  }

  bool is_artificial(int col) const { return col >= first_art_col_; }

  void set_costs_phase1() {
    cost_.assign(cols_, T{});
    for (int c = first_art_col_; c < cols_; ++c) cost_[c] = one();
    recompute_obj_row();
  }

  void set_costs_phase2() {
    cost_.assign(cols_, T{});
    const auto& c = *lp_.objective;
    // Internally we minimize; flip the sign for maximization.
    for (int i = 0; i < n_; ++i) {
      T ci = lp_.maximize ? -c[i] : c[i];
      cost_[i] = ci;
      cost_[n_ + i] = -ci;
    }
    recompute_obj_row();
  }

  void recompute_obj_row() {
    obj_row_.assign(cols_, T{});
    obj_val_ = T{};
    for (int j = 0; j < cols_; ++j) obj_row_[j] = cost_[j];
    for (int i = 0; i < m_; ++i) {
      const T& cb = cost_[basis_[i]];
      if (NumOps<T>::is_zero(cb)) continue;
      for (int j = 0; j < cols_; ++j) obj_row_[j] -= cb * tab_[i][j];
      obj_val_ += cb * b_[i];
    }
  }

  T objective_value() const { return obj_val_; }

  void pivot(int row, int col) {
    T p = tab_[row][col];
    for (auto& v : tab_[row]) v /= p;
    b_[row] /= p;
    for (int r = 0; r < m_; ++r) {
      if (r == row) continue;
      T f = tab_[r][col];
      if (NumOps<T>::is_zero(f)) continue;
      for (int j = 0; j < cols_; ++j) tab_[r][j] -= f * tab_[row][j];
      tab_[r][col] = T{};
      b_[r] -= f * b_[row];
    }
    T f = obj_row_[col];
    if (!NumOps<T>::is_zero(f)) {
      for (int j = 0; j < cols_; ++j) obj_row_[j] -= f * tab_[row][j];
      obj_row_[col] = T{};
      obj_val_ += f * b_[row];
    }
    basis_[row] = col;
  }

  // Bland: smallest eligible entering column; leaving row by minimum ratio
  // with ties broken on the smallest basic variable index. Returns the
  // entering column on unbounded descent, -1 at optimality.
  int iterate(bool allow_artificial_entering) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!allow_artificial_entering && is_artificial(j)) continue;
        if (NumOps<T>::sign(obj_row_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return -1;
      int leave = -1;
      T best{};
      for (int i = 0; i < m_; ++i) {
        if (NumOps<T>::sign(tab_[i][enter]) <= 0) continue;
        T ratio = b_[i] / tab_[i][enter];
        if (leave < 0 || NumOps<T>::lt(ratio, best) ||
            (NumOps<T>::eq(ratio, best) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return enter;
      pivot(leave, enter);
    }
  }

  void phase1() {
    set_costs_phase1();
    if (iterate(true) >= 0)
      throw Error(ErrorCode::Internal, "phase 1 reported unbounded descent");
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      int col = -1;
      for (int j = 0; j < first_art_col_; ++j)
        if (!NumOps<T>::is_zero(tab_[i][j])) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(i, col);
      } else {
        // Redundant row: drop it.
        tab_.erase(tab_.begin() + i);
        b_.erase(b_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --m_;
        --i;
      }
    }
  }

  LpOutcome<T> phase2() {
    set_costs_phase2();
    int enter = iterate(false);
    LpOutcome<T> out;
    if (enter >= 0) {
      out.status = LpStatus::Unbounded;
      Vec<T> dz(cols_, T{});
      dz[enter] = one();
      for (int i = 0; i < m_; ++i) dz[basis_[i]] = -tab_[i][enter];
      out.ray.assign(n_, T{});
      for (int i = 0; i < n_; ++i) out.ray[i] = dz[i] - dz[n_ + i];
      return out;
    }
    out.status = LpStatus::Optimal;
    out.assignment = current_x();
    const auto& c = *lp_.objective;
    out.value = T{};
    for (int i = 0; i < n_; ++i) out.value += c[i] * out.assignment[i];
    return out;
  }

  Vec<T> current_x() const {
    Vec<T> z(cols_, T{});
    for (int i = 0; i < m_; ++i) z[basis_[i]] = b_[i];
    Vec<T> x(n_, T{});
    for (int i = 0; i < n_; ++i) x[i] = z[i] - z[n_ + i];
    return x;
  }

  LpOutcome<T> infeasible_outcome() const {
    // Phase-1 duals, read off the reduced costs of each row's initial basic
    // column (slack cost 0, artificial cost 1), then mapped back through the
    // sign normalization and the <=-form convention.
    LpOutcome<T> out;
    out.status = LpStatus::Infeasible;
    out.farkas.assign(rows_.size(), T{});
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      int col = art_col_of_row_[k] >= 0 ? art_col_of_row_[k] : slack_col_of_row_[k];
      T init_cost = art_col_of_row_[k] >= 0 ? one() : T{};
      T y = init_cost - obj_row_[col];
      if (flip_[k]) y = -y;
      out.farkas[k] = rows_[k].rel == Rel::Ge ? y : -y;
    }
    return out;
  }

  const LinearProgram<T>& lp_;
  std::vector<LpRow<T>> rows_;
  int n_ = 0, m_ = 0, cols_ = 0, num_slack_ = 0, first_art_col_ = 0;
  Mat<T> tab_;
  Vec<T> b_;
  Vec<T> cost_, obj_row_;
  T obj_val_{};
  std::vector<int> basis_, slack_col_of_row_, art_col_of_row_;
  std::vector<bool> flip_;
};

template <class T>
bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

template <class T>
bool lp_verify(const LinearProgram<T>& lp, const LpOutcome<T>& out, std::string* why) {
  auto rows = lp_expanded_rows(lp);
  auto dot = [&](const Vec<T>& a, const Vec<T>& x) {
    T s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
  };

  switch (out.status) {
    case LpStatus::Feasible:
    case LpStatus::Optimal: {
      if (static_cast<int>(out.assignment.size()) != lp.num_vars)
        return fail<T>(why, "assignment size mismatch");
      for (std::size_t k = 0; k < rows.size(); ++k) {
        int s = NumOps<T>::sign(dot(rows[k].a, out.assignment) - rows[k].rhs);
        bool ok = rows[k].rel == Rel::Le ? s <= 0 : rows[k].rel == Rel::Ge ? s >= 0 : s == 0;
        if (!ok) return fail<T>(why, "assignment violates row " + std::to_string(k));
      }
      if (out.status == LpStatus::Optimal) {
        if (!lp.objective) return fail<T>(why, "optimal status without objective");
        if (!NumOps<T>::eq(dot(*lp.objective, out.assignment), out.value))
          return fail<T>(why, "objective value mismatch");
      }
      return true;
    }
    case LpStatus::Infeasible: {
      if (out.farkas.size() != rows.size()) return fail<T>(why, "farkas size mismatch");
      const T kOne = NumOps<T>::from_rational(1);
      Vec<T> combo(lp.num_vars, T{});
      T rhs{};
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const T& y = out.farkas[k];
        int s = NumOps<T>::sign(y);
        if (rows[k].rel != Rel::Eq && s < 0)
          return fail<T>(why, "negative multiplier on inequality row " + std::to_string(k));
        if (s == 0) continue;
        T sgnrow = rows[k].rel == Rel::Ge ? -kOne : kOne;
        for (int i = 0; i < lp.num_vars; ++i) combo[i] += y * sgnrow * rows[k].a[i];
        rhs += y * sgnrow * rows[k].rhs;
      }
      for (const auto& v : combo)
        if (!NumOps<T>::is_zero(v)) return fail<T>(why, "multipliers do not cancel");
      if (NumOps<T>::sign(rhs) >= 0) return fail<T>(why, "aggregated rhs not negative");
      return true;
    }
    case LpStatus::Unbounded: {
      if (!lp.objective) return fail<T>(why, "unbounded status without objective");
      if (static_cast<int>(out.ray.size()) != lp.num_vars)
        return fail<T>(why, "ray size mismatch");
      for (std::size_t k = 0; k < rows.size(); ++k) {
        int s = NumOps<T>::sign(dot(rows[k].a, out.ray));
        bool ok = rows[k].rel == Rel::Le ? s <= 0 : rows[k].rel == Rel::Ge ? s >= 0 : s == 0;
        if (!ok) return fail<T>(why, "ray violates row " + std::to_string(k));
      }
      int s = NumOps<T>::sign(dot(*lp.objective, out.ray));
      if (lp.maximize ? s <= 0 : s >= 0) return fail<T>(why, "ray does not improve objective");
      return true;
    }
  }
  return fail<T>(why, "unknown status");
}

template <class T>
LpOutcome<T> lp_solve(const LinearProgram<T>& lp, const LpLimits& limits) {
  if (lp.rows.empty() && lp.lower.empty() && lp.upper.empty())
    throw Error(ErrorCode::Usage, "linear program needs at least one constraint or bound");
  for (const auto& r : lp.rows)
    if (static_cast<int>(r.a.size()) != lp.num_vars)
      throw Error(ErrorCode::Usage, "constraint width does not match variable count");
  if (lp.objective && static_cast<int>(lp.objective->size()) != lp.num_vars)
    throw Error(ErrorCode::Usage, "objective width does not match variable count");

  Simplex<T> s(lp, limits);
  LpOutcome<T> out = s.run();
  std::string why;
  if (!lp_verify(lp, out, &why)) throw Error(ErrorCode::Internal, "lp self-check failed: " + why);
  return out;
}

template std::vector<LpRow<Rational>> lp_expanded_rows(const LinearProgram<Rational>&);
template std::vector<LpRow<FloatNum>> lp_expanded_rows(const LinearProgram<FloatNum>&);
template LpOutcome<Rational> lp_solve(const LinearProgram<Rational>&, const LpLimits&);
template LpOutcome<FloatNum> lp_solve(const LinearProgram<FloatNum>&, const LpLimits&);
template bool lp_verify(const LinearProgram<Rational>&, const LpOutcome<Rational>&, std::string*);
template bool lp_verify(const LinearProgram<FloatNum>&, const LpOutcome<FloatNum>&, std::string*);

}  // namespace lim
