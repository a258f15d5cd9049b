#include "identify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "errors.hpp"

namespace lim {

namespace {

template <class T>
T t_of(long v) {
  return NumOps<T>::from_rational(Rational(v));
}

template <class T>
std::vector<int> model_groups(const Dataset& d, const std::string& agent, Model model) {
  auto groups = d.groups_of(agent);
  if (groups.empty())
    throw Error(ErrorCode::UnknownAgent, "agent '" + agent + "' is not observed in any group");
  if (model == Model::GlmStar) return ext_groups<T>(d, agent);
  return groups;
}

// Barycentric system over {ideal} + peers: coordinates rows plus the
// affine-combination row.
template <class T>
void barycentric_system(const Vec<T>& ideal, const Mat<T>& peers, const Vec<T>& target,
                        Mat<T>& a, Vec<T>& b) {
  const int dd = static_cast<int>(target.size());
  const int cols = 1 + static_cast<int>(peers.size());
  a.assign(dd + 1, Vec<T>(cols, T{}));
  b.assign(dd + 1, T{});
  for (int t = 0; t < dd; ++t) {
    a[t][0] = ideal[t];
    for (std::size_t j = 0; j < peers.size(); ++j) a[t][1 + j] = peers[j][t];
    b[t] = target[t];
  }
  for (int c = 0; c < cols; ++c) a[dd][c] = t_of<T>(1);
  b[dd] = t_of<T>(1);
}

// Quadratic-loss utility of one member given everyone's rows (double math,
// float-mode cross-check only).
inline double quad_loss_utility(const std::vector<double>& own, const std::vector<double>& ideal,
                                double self_weight,
                                const std::vector<std::pair<double, std::vector<double>>>& peers) {
  double u = 0;
  for (std::size_t t = 0; t < own.size(); ++t) {
    double dv = own[t] - ideal[t];
    u -= self_weight * dv * dv;
  }
  for (const auto& [wt, pj] : peers)
    for (std::size_t t = 0; t < own.size(); ++t) {
      double dp = own[t] - pj[t];
      u -= wt * dp * dp;
    }
  return u;
}

}  // namespace

template <class T>
Polytope<T> sharp_set(const Dataset& d, const std::string& agent, Model model,
                      const OutcomeSpace* outcome) {
  if (model == Model::Llm)
    throw Error(ErrorCode::Usage, "sharp sets are defined for glm and glm-star");
  const OutcomeSpace& y = outcome ? *outcome : d.outcome_space;
  auto groups = model_groups<T>(d, agent, model);
  if (groups.empty()) return outcome_polytope<T>(y);  // no testable group restricts the ideal

  std::vector<Polytope<T>> cones;
  for (int g : groups) cones.push_back(inverse_cone<T>(d, g, agent, y));
  auto st = intersection_status(cones, /*full=*/false);
  if (!st.nonempty)
    throw Error(ErrorCode::InconsistentData,
                "no rationalizing ideal point for agent '" + agent + "' under " +
                    model_name(model));
  return intersect(cones);
}

template <class T>
IdealIdentification<T> point_identify_ideal(const Dataset& d, const std::string& agent,
                                            Model model, const OutcomeSpace* outcome,
                                            int vertex_cap) {
  Polytope<T> set = sharp_set<T>(d, agent, model, outcome);
  auto st = intersection_status(std::vector<Polytope<T>>{set}, /*full=*/true);
  if (!st.nonempty) throw Error(ErrorCode::Internal, "sharp set vanished between queries");

  IdealIdentification<T> out;
  out.dimension = st.dimension;
  if (st.dimension == 0) {
    out.point = true;
    out.value = st.witness;
    return out;
  }
  out.point = false;
  out.value = st.relative_interior;
  try {
    out.vertices = enumerate_vertices(set, vertex_cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Capacity) throw;
  }
  return out;
}

template <class T>
InfluenceRecovery<T> recover_influence(const Vec<T>& ideal,
                                       const std::map<std::string, Vec<T>>& choices,
                                       const std::string& agent, Model mode) {
  auto target_it = choices.find(agent);
  if (target_it == choices.end())
    throw Error(ErrorCode::UnknownAgent, "agent '" + agent + "' has no row in the group");
  std::vector<std::string> peer_names;
  Mat<T> peers;
  for (const auto& [name, row] : choices) {
    if (name == agent) continue;
    peer_names.push_back(name);
    peers.push_back(row);
  }

  Mat<T> pts;
  pts.push_back(ideal);
  for (const auto& p : peers) pts.push_back(p);

  Mat<T> a;
  Vec<T> b;
  barycentric_system(ideal, peers, target_it->second, a, b);

  InfluenceRecovery<T> out;
  auto to_row = [&](const Vec<T>& coeffs) {
    std::map<std::string, T> row;
    row[agent] = coeffs[0];
    for (std::size_t j = 0; j < peer_names.size(); ++j) row[peer_names[j]] = coeffs[1 + j];
    return row;
  };

  const bool need_positive_self = mode != Model::GlmStar;
  if (affinely_independent(pts)) {
    auto sol = solve_linear(a, b);
    if (!sol) {
      out.kind = RecoveryKind::Infeasible;
      return out;
    }
    bool ok = true;
    for (const auto& c : *sol)
      if (NumOps<T>::sign(c) < 0) ok = false;
    if (need_positive_self && NumOps<T>::sign((*sol)[0]) <= 0) ok = false;
    out.kind = ok ? RecoveryKind::Unique : RecoveryKind::Infeasible;
    if (ok) out.row = to_row(*sol);
    return out;
  }

  auto scan = scan_basic_solutions(a, b, /*positive_col=*/0);
  if (need_positive_self) {
    if (scan.positive_found) {
      out.kind = RecoveryKind::NonUnique;
      out.row = to_row(scan.first_positive);
    } else {
      out.kind = RecoveryKind::Infeasible;
    }
  } else if (scan.feasible) {
    out.kind = RecoveryKind::NonUnique;
    out.row = to_row(scan.first);
  } else {
    out.kind = RecoveryKind::Infeasible;
  }
  return out;
}

template <class T>
LuceRecovery<T> recover_luce_weights(const Dataset& d, const std::string& agent,
                                     const Vec<T>& ideal) {
  auto groups = d.groups_of(agent);
  if (groups.empty())
    throw Error(ErrorCode::UnknownAgent, "agent '" + agent + "' is not observed in any group");

  LuceRecovery<T> out;
  out.w[agent] = t_of<T>(1);
  for (int g : groups) {
    const Observation& o = d.observations[g];
    std::map<std::string, Vec<T>> choices;
    Mat<T> pts{ideal};
    for (const auto& member : o.sorted_members()) {
      choices[member] = row_as<T>(o, member);
      if (member != agent) pts.push_back(choices[member]);
    }
    if (!affinely_independent(pts)) continue;  // not a qualifying group

    auto rec = recover_influence<T>(ideal, choices, agent, Model::Glm);
    if (rec.kind != RecoveryKind::Unique)
      throw Error(ErrorCode::InconsistentData,
                  "ideal point cannot rationalize group {" + o.key() + "} with positive self-weight");
    const T& self = rec.row.at(agent);
    for (const auto& member : o.sorted_members()) {
      if (member == agent) continue;
      T ratio = rec.row.at(member) / self;  // w(member) under w(agent) = 1
      auto it = out.w.find(member);
      if (it == out.w.end()) {
        out.w[member] = ratio;
      } else if (!NumOps<T>::eq(it->second, ratio)) {
        throw Error(ErrorCode::InconsistentData,
                    "weight ratios for '" + member + "' disagree across qualifying groups");
      }
      out.qualifying_groups[member].push_back(o.key());
    }
  }

  for (const auto& other : d.agents)
    if (other != agent && !out.w.count(other)) out.missing.push_back(other);
  out.complete = out.missing.empty();
  return out;
}

template <class T>
std::map<std::string, Vec<T>> predict_group(const std::map<std::string, LuceProfile<T>>& profiles,
                                            const std::vector<std::string>& group) {
  std::vector<std::string> members = group;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const int n = static_cast<int>(members.size());
  if (n == 0) throw Error(ErrorCode::Usage, "prediction needs a nonempty group");

  int dd = -1;
  for (const auto& m : members) {
    auto it = profiles.find(m);
    if (it == profiles.end())
      throw Error(ErrorCode::MissingProfile, "no profile for group member '" + m + "'");
    const auto& prof = it->second;
    if (dd < 0) dd = static_cast<int>(prof.v.size());
    if (static_cast<int>(prof.v.size()) != dd)
      throw Error(ErrorCode::Dimension, "profiles have mixed dimensions");
    auto self = prof.w.find(m);
    if (self == prof.w.end() || NumOps<T>::sign(self->second) <= 0)
      throw Error(ErrorCode::MissingProfile, "profile for '" + m + "' lacks a positive self-weight");
    for (const auto& peer : members) {
      auto wit = prof.w.find(peer);
      if (wit == prof.w.end())
        throw Error(ErrorCode::MissingProfile,
                    "profile for '" + m + "' has no weight on '" + peer + "'");
      if (NumOps<T>::sign(wit->second) < 0)
        throw Error(ErrorCode::MissingProfile, "negative weight in profile for '" + m + "'");
    }
  }

  // Per alternative: w_i(N) p_i(x) - sum_j w_i(j) p_j(x) = w_i(i) v_i(x).
  Mat<T> m(n, Vec<T>(n, T{}));
  for (int i = 0; i < n; ++i) {
    const auto& prof = profiles.at(members[i]);
    T wn{};
    for (int j = 0; j < n; ++j) wn += prof.w.at(members[j]);
    m[i][i] = wn;
    for (int j = 0; j < n; ++j)
      if (j != i) m[i][j] = -prof.w.at(members[j]);
  }

  std::map<std::string, Vec<T>> result;
  for (const auto& member : members) result[member] = Vec<T>(dd, T{});
  for (int x = 0; x < dd; ++x) {
    Vec<T> rhs(n);
    for (int i = 0; i < n; ++i) {
      const auto& prof = profiles.at(members[i]);
      rhs[i] = prof.w.at(members[i]) * prof.v[x];
    }
    auto sol = solve_linear(m, rhs);
    if (!sol) throw Error(ErrorCode::Internal, "diagonally dominant system failed to solve");
    for (int i = 0; i < n; ++i) result[members[i]][x] = (*sol)[i];
  }

  // The prediction must land in the simplex and solve the fixed point under
  // the renormalized weights.
  std::map<std::string, std::map<std::string, T>> rows;
  std::map<std::string, Vec<T>> ideals;
  for (int i = 0; i < n; ++i) {
    const auto& prof = profiles.at(members[i]);
    T wn{};
    for (int j = 0; j < n; ++j) wn += prof.w.at(members[j]);
    std::map<std::string, T> row;
    for (int j = 0; j < n; ++j) row[members[j]] = prof.w.at(members[j]) / wn;
    rows[members[i]] = std::move(row);
    ideals[members[i]] = prof.v;

    T sum{};
    for (const auto& px : result[members[i]]) {
      if (NumOps<T>::sign(px) < 0)
        throw Error(ErrorCode::Internal, "prediction left the simplex");
      sum += px;
    }
    if (!NumOps<T>::eq(sum, t_of<T>(1)))
      throw Error(ErrorCode::Internal, "prediction mass is not 1");
  }
  if (!verify_equilibrium(result, rows, ideals))
    throw Error(ErrorCode::Internal, "prediction does not solve the equilibrium equations");
  return result;
}

template <class T>
bool verify_equilibrium(const std::map<std::string, Vec<T>>& choices,
                        const std::map<std::string, std::map<std::string, T>>& rows,
                        const std::map<std::string, Vec<T>>& ideals) {
  if (choices.empty()) return true;
  const int dd = static_cast<int>(choices.begin()->second.size());
  for (const auto& [agent, own] : choices) {
    auto row_it = rows.find(agent);
    auto v_it = ideals.find(agent);
    if (row_it == rows.end() || v_it == ideals.end()) return false;
    if (static_cast<int>(own.size()) != dd || static_cast<int>(v_it->second.size()) != dd)
      return false;
    const auto& row = row_it->second;
    auto self_it = row.find(agent);
    if (self_it == row.end()) return false;

    // gradient of the quadratic loss in the own row
    Vec<T> grad(dd, T{});
    for (int t = 0; t < dd; ++t)
      grad[t] = t_of<T>(-2) * self_it->second * (own[t] - v_it->second[t]);
    for (const auto& [peer, wt] : row) {
      if (peer == agent) continue;
      auto pj = choices.find(peer);
      if (pj == choices.end()) return false;
      for (int t = 0; t < dd; ++t) grad[t] -= t_of<T>(2) * wt * (own[t] - pj->second[t]);
    }
    // projection on the sum-zero tangent space vanishes iff all components agree
    for (int t = 1; t < dd; ++t)
      if (!NumOps<T>::eq(grad[t], grad[0])) return false;

    if constexpr (std::is_same_v<T, FloatNum>) {
      // cross-check the analytic tangent derivative with central differences
      const double h = 1e-5, tol = 1e-6;
      std::vector<double> own_d(dd), ideal_d(dd);
      for (int t = 0; t < dd; ++t) own_d[t] = own[t].v;
      for (int t = 0; t < dd; ++t) ideal_d[t] = v_it->second[t].v;
      std::vector<std::pair<double, std::vector<double>>> peers_d;
      for (const auto& [peer, wt] : row) {
        if (peer == agent) continue;
        std::vector<double> pj(dd);
        for (int t = 0; t < dd; ++t) pj[t] = choices.at(peer)[t].v;
        peers_d.push_back({wt.v, std::move(pj)});
      }
      for (int t = 0; t + 1 < dd; ++t) {
        double analytic = grad[t].v - grad[t + 1].v;  // gradient dotted with e_t - e_{t+1}
        auto up = own_d, down = own_d;
        up[t] += h;
        up[t + 1] -= h;
        down[t] -= h;
        down[t + 1] += h;
        double fd = (quad_loss_utility(up, ideal_d, self_it->second.v, peers_d) -
                     quad_loss_utility(down, ideal_d, self_it->second.v, peers_d)) /
                    (2 * h);
        if (std::fabs(analytic - fd) > tol * std::max(1.0, std::fabs(analytic))) return false;
      }
    }
  }
  return true;
}

#define LIM_IDENTIFY_IMPL(T)                                                                  \
  template Polytope<T> sharp_set<T>(const Dataset&, const std::string&, Model,                \
                                    const OutcomeSpace*);                                     \
  template IdealIdentification<T> point_identify_ideal<T>(const Dataset&, const std::string&, \
                                                          Model, const OutcomeSpace*, int);   \
  template InfluenceRecovery<T> recover_influence<T>(                                         \
      const Vec<T>&, const std::map<std::string, Vec<T>>&, const std::string&, Model);        \
  template LuceRecovery<T> recover_luce_weights<T>(const Dataset&, const std::string&,        \
                                                   const Vec<T>&);                            \
  template std::map<std::string, Vec<T>> predict_group<T>(                                    \
      const std::map<std::string, LuceProfile<T>>&, const std::vector<std::string>&);         \
  template bool verify_equilibrium<T>(const std::map<std::string, Vec<T>>&,                   \
                                      const std::map<std::string, std::map<std::string, T>>&, \
                                      const std::map<std::string, Vec<T>>&);

LIM_IDENTIFY_IMPL(Rational)
LIM_IDENTIFY_IMPL(FloatNum)
#undef LIM_IDENTIFY_IMPL

}  // namespace lim
