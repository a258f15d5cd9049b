#include "geometry.hpp"

#include <algorithm>

#include "errors.hpp"

namespace lim {

namespace {

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
Vec<T> padded(const Vec<T>& a, int width, int offset) {
  Vec<T> out(width, T{});
  for (std::size_t i = 0; i < a.size(); ++i) out[offset + i] = a[i];
  return out;
}

template <class T>
bool lex_less(const Vec<T>& a, const Vec<T>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (NumOps<T>::lt(a[i], b[i])) return true;
    if (NumOps<T>::lt(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

// Basis of the orthogonal complement of the row span, i.e. the null space of
// the matrix whose rows are `rows`, inside R^dim.
template <class T>
Mat<T> orthogonal_complement(const Mat<T>& rows, int dim) {
  if (rows.empty()) {
    Mat<T> basis;
    for (int i = 0; i < dim; ++i) {
      Vec<T> e(dim, T{});
      e[i] = NumOps<T>::from_rational(1);
      basis.push_back(std::move(e));
    }
    return basis;
  }
  Mat<T> m = rows;
  const std::size_t nr = m.size();
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(dim, false);
  std::size_t row = 0;
  for (int col = 0; col < dim && row < nr; ++col) {
    std::size_t pivot = row;
    for (std::size_t r = row + 1; r < nr; ++r)
      if (NumOps<T>::lt(NumOps<T>::abs(m[pivot][col]), NumOps<T>::abs(m[r][col]))) pivot = r;
    if (NumOps<T>::is_zero(m[pivot][col])) continue;
    std::swap(m[pivot], m[row]);
    for (std::size_t r = 0; r < nr; ++r) {
      if (r == row || NumOps<T>::is_zero(m[r][col])) continue;
      T f = m[r][col] / m[row][col];
      for (int c = col; c < dim; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col_of_row.push_back(col);
    is_pivot[col] = true;
    ++row;
  }
  Mat<T> basis;
  for (int freecol = 0; freecol < dim; ++freecol) {
    if (is_pivot[freecol]) continue;
    Vec<T> x(dim, T{});
    x[freecol] = NumOps<T>::from_rational(1);
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
      int pc = pivot_col_of_row[r];
      x[pc] = -m[r][freecol] / m[r][pc];
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

template <class T>
LpOutcome<T> optimize_over(const Polytope<T>& p, const Vec<T>& y_objective, bool maximize) {
  LinearProgram<T> lp = polytope_lp(p);
  lp.objective = padded(y_objective, p.width(), 0);
  lp.maximize = maximize;
  return lp_solve(lp);
}

}  // namespace

template <class T>
Polytope<T> outcome_polytope(const OutcomeSpace& y) {
  Polytope<T> p;
  p.dim = y.dim;
  const T kOne = NumOps<T>::from_rational(1);
  if (y.kind == OutcomeSpace::Kind::Simplex) {
    for (int t = 0; t < y.dim; ++t) {
      Vec<T> a(y.dim, T{});
      a[t] = -kOne;
      p.ineqs.push_back({std::move(a), Rel::Le, T{}});
    }
    p.eqs.push_back({Vec<T>(y.dim, kOne), Rel::Eq, kOne});
  } else {
    for (std::size_t k = 0; k < y.a.size(); ++k)
      p.ineqs.push_back({from_rationals<T>(y.a[k]), Rel::Le, NumOps<T>::from_rational(y.c[k])});
  }
  return p;
}

template <class T>
ConeRep<T> cone_rep(const Dataset& d, int obs_index, const std::string& agent) {
  const Observation& o = d.observations.at(obs_index);
  ConeRep<T> rep;
  rep.apex = row_as<T>(o, agent);
  for (const auto& member : o.sorted_members()) {
    if (member == agent) continue;
    Vec<T> g = row_as<T>(o, member);
    for (std::size_t t = 0; t < g.size(); ++t) g[t] = rep.apex[t] - g[t];
    rep.generators.push_back(std::move(g));
    rep.peer_order.push_back(member);
  }
  return rep;
}

template <class T>
Polytope<T> inverse_cone(const Dataset& d, int obs_index, const std::string& agent,
                         const OutcomeSpace& y) {
  const Observation& o = d.observations.at(obs_index);
  if (std::find(o.group.begin(), o.group.end(), agent) == o.group.end())
    throw Error(ErrorCode::UnknownAgent, "agent '" + agent + "' not in group {" + o.key() + "}");

  ConeRep<T> rep = cone_rep<T>(d, obs_index, agent);
  const int dim = d.dim();
  const int k = static_cast<int>(rep.generators.size());

  Polytope<T> p;
  p.dim = dim;
  p.aux = k;
  const int width = p.width();
  const T kOne = NumOps<T>::from_rational(1);

  // y - sum_j mu_j * g_j = apex
  for (int t = 0; t < dim; ++t) {
    Vec<T> a(width, T{});
    a[t] = kOne;
    for (int j = 0; j < k; ++j) a[dim + j] = -rep.generators[j][t];
    p.eqs.push_back({std::move(a), Rel::Eq, rep.apex[t]});
  }
  // mu >= 0
  for (int j = 0; j < k; ++j) {
    Vec<T> a(width, T{});
    a[dim + j] = -kOne;
    p.ineqs.push_back({std::move(a), Rel::Le, T{}});
  }
  // y constrained to the outcome space
  Polytope<T> yspace = outcome_polytope<T>(y);
  for (auto& r : yspace.ineqs) p.ineqs.push_back({padded(r.a, width, 0), Rel::Le, r.rhs});
  for (auto& r : yspace.eqs) p.eqs.push_back({padded(r.a, width, 0), Rel::Eq, r.rhs});
  return p;
}

template <class T>
Polytope<T> inverse_cone(const Dataset& d, const std::string& group, const std::string& agent,
                         const OutcomeSpace& y) {
  int idx = d.find_group(group);
  if (idx < 0) throw Error(ErrorCode::UnknownGroup, "no observation of group {" + group + "}");
  return inverse_cone<T>(d, idx, agent, y);
}

template <class T>
LinearProgram<T> polytope_lp(const Polytope<T>& p) {
  LinearProgram<T> lp;
  lp.num_vars = p.width();
  for (const auto& r : p.eqs) lp.add_row(r.a, Rel::Eq, r.rhs);
  for (const auto& r : p.ineqs) lp.add_row(r.a, Rel::Le, r.rhs);
  return lp;
}

template <class T>
Polytope<T> intersect(const std::vector<Polytope<T>>& ps) {
  if (ps.empty()) throw Error(ErrorCode::Usage, "intersection of zero polytopes");
  Polytope<T> q;
  q.dim = ps[0].dim;
  for (const auto& p : ps) {
    if (p.dim != q.dim) throw Error(ErrorCode::Dimension, "ambient dimensions differ");
    q.aux += p.aux;
  }
  const int width = q.width();
  int offset = q.dim;
  for (const auto& p : ps) {
    for (const auto& r : p.eqs) {
      Vec<T> a(width, T{});
      for (int t = 0; t < p.dim; ++t) a[t] = r.a[t];
      for (int j = 0; j < p.aux; ++j) a[offset + j] = r.a[p.dim + j];
      q.eqs.push_back({std::move(a), Rel::Eq, r.rhs});
    }
    for (const auto& r : p.ineqs) {
      Vec<T> a(width, T{});
      for (int t = 0; t < p.dim; ++t) a[t] = r.a[t];
      for (int j = 0; j < p.aux; ++j) a[offset + j] = r.a[p.dim + j];
      q.ineqs.push_back({std::move(a), Rel::Le, r.rhs});
    }
    offset += p.aux;
  }
  return q;
}

template <class T>
bool polytope_member(const Polytope<T>& p, const Vec<T>& y) {
  if (static_cast<int>(y.size()) != p.dim)
    throw Error(ErrorCode::Dimension, "membership query has wrong dimension");
  if (p.aux == 0) {
    for (const auto& r : p.ineqs)
      if (NumOps<T>::sign(dot(r.a, y) - r.rhs) > 0) return false;
    for (const auto& r : p.eqs)
      if (NumOps<T>::sign(dot(r.a, y) - r.rhs) != 0) return false;
    return true;
  }
  LinearProgram<T> lp = polytope_lp(p);
  const T kOne = NumOps<T>::from_rational(1);
  for (int t = 0; t < p.dim; ++t) {
    Vec<T> a(p.width(), T{});
    a[t] = kOne;
    lp.add_row(std::move(a), Rel::Eq, y[t]);
  }
  return lp_solve(lp).status != LpStatus::Infeasible;
}

template <class T>
IntersectionStatus<T> intersection_status(const std::vector<Polytope<T>>& ps, bool full) {
  IntersectionStatus<T> st;
  Polytope<T> q = intersect(ps);
  LinearProgram<T> feas = polytope_lp(q);
  LpOutcome<T> out = lp_solve(feas);
  if (out.status == LpStatus::Infeasible) {
    st.nonempty = false;
    st.farkas = out.farkas;
    return st;
  }
  st.nonempty = true;
  st.witness.assign(out.assignment.begin(), out.assignment.begin() + q.dim);
  if (!full) return st;

  // Affine dimension of the projection: grow a set of independent directions;
  // each round scans an orthogonal-complement basis for a direction of
  // positive width, which is exact and immune to degenerate tie-breaking.
  Mat<T> directions;
  while (true) {
    Mat<T> complement = orthogonal_complement(directions, q.dim);
    bool grew = false;
    for (const auto& c : complement) {
      auto hi = optimize_over(q, c, true);
      auto lo = optimize_over(q, c, false);
      Vec<T> d;
      if (hi.status == LpStatus::Unbounded) {
        d.assign(hi.ray.begin(), hi.ray.begin() + q.dim);
      } else if (lo.status == LpStatus::Unbounded) {
        d.assign(lo.ray.begin(), lo.ray.begin() + q.dim);
      } else if (hi.status == LpStatus::Optimal && lo.status == LpStatus::Optimal) {
        if (NumOps<T>::sign(hi.value - lo.value) != 0) {
          d.resize(q.dim);
          for (int t = 0; t < q.dim; ++t) d[t] = hi.assignment[t] - lo.assignment[t];
        }
      } else {
        throw Error(ErrorCode::Internal, "projection direction optimization failed");
      }
      if (!d.empty()) {
        directions.push_back(std::move(d));
        grew = true;
        break;
      }
    }
    if (!grew) break;
  }
  st.dimension = static_cast<int>(directions.size());

  // Relative-interior point: maximize the minimum slack over the faces that
  // are not implicit equalities, then project. Implicit rows are found by
  // maximizing each slack individually.
  std::vector<bool> implicit(q.ineqs.size(), false);
  for (std::size_t k = 0; k < q.ineqs.size(); ++k) {
    LinearProgram<T> lp = polytope_lp(q);
    lp.objective = q.ineqs[k].a;
    lp.maximize = false;
    auto m = lp_solve(lp);
    if (m.status == LpStatus::Optimal && NumOps<T>::sign(q.ineqs[k].rhs - m.value) == 0)
      implicit[k] = true;
  }
  LinearProgram<T> relint;
  const int width = q.width();
  relint.num_vars = width + 1;  // trailing variable is the common slack margin
  const T kOne = NumOps<T>::from_rational(1);
  for (const auto& r : q.eqs) relint.add_row(padded(r.a, width + 1, 0), Rel::Eq, r.rhs);
  for (std::size_t k = 0; k < q.ineqs.size(); ++k) {
    Vec<T> a = padded(q.ineqs[k].a, width + 1, 0);
    if (implicit[k]) {
      relint.add_row(std::move(a), Rel::Eq, q.ineqs[k].rhs);
    } else {
      a[width] = kOne;
      relint.add_row(std::move(a), Rel::Le, q.ineqs[k].rhs);
    }
  }
  {
    Vec<T> a(width + 1, T{});
    a[width] = kOne;
    relint.add_row(a, Rel::Le, kOne);  // margin box keeps the program bounded
    Vec<T> b(width + 1, T{});
    b[width] = -kOne;
    relint.add_row(std::move(b), Rel::Le, T{});
  }
  relint.objective = Vec<T>(width + 1, T{});
  (*relint.objective)[width] = kOne;
  relint.maximize = true;
  auto center = lp_solve(relint);
  if (center.status != LpStatus::Optimal)
    throw Error(ErrorCode::Internal, "relative-interior program not optimal");
  st.relative_interior.assign(center.assignment.begin(), center.assignment.begin() + q.dim);
  return st;
}

template <class T>
bool affinely_independent(const Mat<T>& points) {
  if (points.size() <= 1) return true;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].size() != points[0].size())
      throw Error(ErrorCode::Dimension, "points have mixed dimensions");
  Mat<T> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Vec<T> d(points[0].size());
    for (std::size_t t = 0; t < d.size(); ++t) d[t] = points[i][t] - points[0][t];
    diffs.push_back(std::move(d));
  }
  return mat_rank(diffs) == static_cast<int>(points.size()) - 1;
}

template <class T>
Mat<T> enumerate_vertices(const Polytope<T>& p, int cap) {
  const int width = p.width();
  Mat<T> eqrows;
  Vec<T> eqrhs;
  for (const auto& r : p.eqs) {
    eqrows.push_back(r.a);
    eqrhs.push_back(r.rhs);
  }
  const int re = mat_rank(eqrows);
  const int k = width - re;
  const int m = static_cast<int>(p.ineqs.size());
  if (k < 0) throw Error(ErrorCode::Internal, "overdetermined equality system");

  // Fail fast when the candidate count blows past the cap.
  double candidates = 1;
  for (int i = 0; i < k; ++i) candidates = candidates * (m - i) / (i + 1);
  if (candidates > cap)
    throw Error(ErrorCode::Capacity, "vertex enumeration would examine too many bases");

  Mat<T> lifted;
  for_each_combination(m, k, [&](const std::vector<int>& subset) {
    Mat<T> a = eqrows;
    Vec<T> b = eqrhs;
    for (int idx : subset) {
      a.push_back(p.ineqs[idx].a);
      b.push_back(p.ineqs[idx].rhs);
    }
    if (mat_rank(a) != width) return true;
    auto sol = solve_linear(a, b);
    if (!sol) return true;
    for (const auto& r : p.ineqs)
      if (NumOps<T>::sign(dot(r.a, *sol) - r.rhs) > 0) return true;
    lifted.push_back(*sol);
    return true;
  });

  Mat<T> projected;
  for (const auto& z : lifted) projected.emplace_back(z.begin(), z.begin() + p.dim);
  std::sort(projected.begin(), projected.end(), lex_less<T>);
  projected.erase(std::unique(projected.begin(), projected.end(),
                              [](const Vec<T>& a, const Vec<T>& b) {
                                for (std::size_t i = 0; i < a.size(); ++i)
                                  if (!NumOps<T>::eq(a[i], b[i])) return false;
                                return true;
                              }),
                  projected.end());

  // A lifted basic solution can project into the interior of the shadow;
  // keep only points outside the hull of the others.
  if (p.aux == 0 || projected.size() <= 1) return projected;
  Mat<T> vertices;
  const T kOne = NumOps<T>::from_rational(1);
  for (std::size_t i = 0; i < projected.size(); ++i) {
    LinearProgram<T> hull;
    hull.num_vars = static_cast<int>(projected.size()) - 1;
    for (int t = 0; t < p.dim; ++t) {
      Vec<T> a;
      for (std::size_t j = 0; j < projected.size(); ++j)
        if (j != i) a.push_back(projected[j][t]);
      hull.add_row(std::move(a), Rel::Eq, projected[i][t]);
    }
    hull.add_row(Vec<T>(hull.num_vars, kOne), Rel::Eq, kOne);
    hull.lower.assign(hull.num_vars, T{});
    if (lp_solve(hull).status == LpStatus::Infeasible) vertices.push_back(projected[i]);
  }
  return vertices;
}

template Polytope<Rational> outcome_polytope(const OutcomeSpace&);
template Polytope<FloatNum> outcome_polytope(const OutcomeSpace&);
template ConeRep<Rational> cone_rep(const Dataset&, int, const std::string&);
template ConeRep<FloatNum> cone_rep(const Dataset&, int, const std::string&);
template Polytope<Rational> inverse_cone(const Dataset&, int, const std::string&,
                                         const OutcomeSpace&);
template Polytope<FloatNum> inverse_cone(const Dataset&, int, const std::string&,
                                         const OutcomeSpace&);
template Polytope<Rational> inverse_cone(const Dataset&, const std::string&, const std::string&,
                                         const OutcomeSpace&);
template Polytope<FloatNum> inverse_cone(const Dataset&, const std::string&, const std::string&,
                                         const OutcomeSpace&);
template LinearProgram<Rational> polytope_lp(const Polytope<Rational>&);
template LinearProgram<FloatNum> polytope_lp(const Polytope<FloatNum>&);
template Polytope<Rational> intersect(const std::vector<Polytope<Rational>>&);
template Polytope<FloatNum> intersect(const std::vector<Polytope<FloatNum>>&);
template bool polytope_member(const Polytope<Rational>&, const Vec<Rational>&);
template bool polytope_member(const Polytope<FloatNum>&, const Vec<FloatNum>&);
template IntersectionStatus<Rational> intersection_status(const std::vector<Polytope<Rational>>&,
                                                          bool);
template IntersectionStatus<FloatNum> intersection_status(const std::vector<Polytope<FloatNum>>&,
                                                          bool);
template bool affinely_independent(const Mat<Rational>&);
template bool affinely_independent(const Mat<FloatNum>&);
template Mat<Rational> enumerate_vertices(const Polytope<Rational>&, int);
template Mat<FloatNum> enumerate_vertices(const Polytope<FloatNum>&, int);

}  // namespace lim
