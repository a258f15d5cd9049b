#include "consistency.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace lim {

const char* model_name(Model m) {
  switch (m) {
    case Model::Glm: return "glm";
    case Model::GlmStar: return "glm-star";
    case Model::Llm: return "llm";
  }
  return "?";
}

namespace {

template <class T>
T t_of(long v) {
  return NumOps<T>::from_rational(Rational(v));
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

template <class T>
std::vector<std::string> peers_of(const Observation& o, const std::string& agent) {
  std::vector<std::string> peers;
  for (const auto& m : o.sorted_members())
    if (m != agent) peers.push_back(m);
  return peers;
}

// Solver-free hull test used by the certificate verifier: barycentric
// coordinates over basic point subsets.
template <class T>
bool hull_contains_enum(const Mat<T>& points, const Vec<T>& target) {
  if (points.empty()) return false;
  const int d = static_cast<int>(target.size());
  const int k = static_cast<int>(points.size());
  Mat<T> a(d + 1, Vec<T>(k));
  Vec<T> b(d + 1);
  for (int t = 0; t < d; ++t) {
    for (int j = 0; j < k; ++j) a[t][j] = points[j][t];
    b[t] = target[t];
  }
  for (int j = 0; j < k; ++j) a[d][j] = t_of<T>(1);
  b[d] = t_of<T>(1);
  return scan_basic_solutions(a, b).feasible;
}

// Influence row with zero self-weight: lexicographically-first convex
// combination of the peers reproducing the agent's row.
template <class T>
std::map<std::string, T> hull_row(const Dataset& d, int obs_index, const std::string& agent) {
  const Observation& o = d.observations[obs_index];
  auto peers = peers_of<T>(o, agent);
  const int dd = d.dim();
  const int k = static_cast<int>(peers.size());
  Mat<T> a(dd + 1, Vec<T>(k));
  Vec<T> b(dd + 1);
  Vec<T> target = row_as<T>(o, agent);
  for (int t = 0; t < dd; ++t) {
    for (int j = 0; j < k; ++j) a[t][j] = NumOps<T>::from_rational(o.choices.at(peers[j]).coords[t]);
    b[t] = target[t];
  }
  for (int j = 0; j < k; ++j) a[dd][j] = t_of<T>(1);
  b[dd] = t_of<T>(1);
  auto scan = scan_basic_solutions(a, b);
  if (!scan.feasible)
    throw Error(ErrorCode::Internal, "hull row requested for a row outside the peers' hull");
  std::map<std::string, T> row;
  row[agent] = T{};
  for (int j = 0; j < k; ++j) row[peers[j]] = scan.first[j];
  return row;
}

// Shared money-pump margin program. Incentive compatibility is per-group for
// the general model and aggregated per rival for the Luce model.
template <class T>
Certificate<T> money_pump_over(const Dataset& d, const std::string& agent,
                               const std::vector<int>& group_idxs, bool weak_ic) {
  const int dd = d.dim();
  const int ng = static_cast<int>(group_idxs.size());
  const int eps = ng * dd;
  LinearProgram<T> lp;
  lp.num_vars = eps + 1;
  auto bvar = [&](int g, int x) { return g * dd + x; };

  for (int x = 0; x < dd; ++x) {  // strict feasibility: sum_g b_g(x) <= -eps
    Vec<T> a(lp.num_vars, T{});
    for (int g = 0; g < ng; ++g) a[bvar(g, x)] = t_of<T>(1);
    a[eps] = t_of<T>(1);
    lp.add_row(std::move(a), Rel::Le, T{});
  }
  for (int g = 0; g < ng; ++g) {  // individual rationality: b_g . p_i >= eps
    const Observation& o = d.observations[group_idxs[g]];
    Vec<T> pi = row_as<T>(o, agent);
    Vec<T> a(lp.num_vars, T{});
    for (int x = 0; x < dd; ++x) a[bvar(g, x)] = pi[x];
    a[eps] = t_of<T>(-1);
    lp.add_row(std::move(a), Rel::Ge, T{});
  }
  if (!weak_ic) {
    for (int g = 0; g < ng; ++g) {
      const Observation& o = d.observations[group_idxs[g]];
      Vec<T> pi = row_as<T>(o, agent);
      for (const auto& peer : peers_of<T>(o, agent)) {
        Vec<T> pj = row_as<T>(o, peer);
        Vec<T> a(lp.num_vars, T{});
        for (int x = 0; x < dd; ++x) a[bvar(g, x)] = pi[x] - pj[x];
        lp.add_row(std::move(a), Rel::Ge, T{});
      }
    }
  } else {
    std::set<std::string> rivals;
    for (int g : group_idxs)
      for (const auto& peer : peers_of<T>(d.observations[g], agent)) rivals.insert(peer);
    for (const auto& rival : rivals) {
      Vec<T> a(lp.num_vars, T{});
      for (int g = 0; g < ng; ++g) {
        const Observation& o = d.observations[group_idxs[g]];
        if (!o.choices.count(rival)) continue;
        Vec<T> pi = row_as<T>(o, agent);
        Vec<T> pj = row_as<T>(o, rival);
        for (int x = 0; x < dd; ++x) a[bvar(g, x)] += pi[x] - pj[x];
      }
      lp.add_row(std::move(a), Rel::Ge, T{});
    }
  }
  lp.lower.assign(lp.num_vars, t_of<T>(-1));
  lp.upper.assign(lp.num_vars, t_of<T>(1));
  lp.lower[eps] = T{};
  lp.objective = Vec<T>(lp.num_vars, T{});
  (*lp.objective)[eps] = t_of<T>(1);
  lp.maximize = true;

  auto out = lp_solve(lp);
  if (out.status != LpStatus::Optimal)
    throw Error(ErrorCode::Internal, "money-pump margin program did not optimize");
  Certificate<T> cert;
  cert.margin = out.value;
  for (int g = 0; g < ng; ++g) {
    Vec<T> b(dd);
    for (int x = 0; x < dd; ++x) b[x] = out.assignment[bvar(g, x)];
    cert.bet.per_group[d.observations[group_idxs[g]].key()] = std::move(b);
  }
  return cert;
}

template <class T>
void attach_certificate(ConsistencyVerdict<T>& verdict, const Dataset& d,
                        const std::vector<int>& groups, bool weak_ic,
                        const ConsistencyOptions& opt) {
  if (!opt.want_certificate) return;
  auto cert = money_pump_over<T>(d, verdict.agent, groups, weak_ic);
  if (NumOps<T>::sign(cert.margin) > 0) {
    verdict.certificate = std::move(cert);
  } else if constexpr (std::is_same_v<T, Rational>) {
    throw Error(ErrorCode::Internal,
                "infeasible rationalization without a strict money pump (duality violated)");
  }
}

std::vector<int> agent_groups(const Dataset& d, const std::string& agent) {
  auto groups = d.groups_of(agent);
  if (groups.empty())
    throw Error(ErrorCode::UnknownAgent, "agent '" + agent + "' is not observed in any group");
  return groups;
}

}  // namespace

template <class T>
bool in_peers_hull(const Dataset& d, int obs_index, const std::string& agent) {
  const Observation& o = d.observations[obs_index];
  auto peers = peers_of<T>(o, agent);
  if (peers.empty()) return false;
  const int dd = d.dim();
  LinearProgram<T> lp;
  lp.num_vars = static_cast<int>(peers.size());
  Vec<T> target = row_as<T>(o, agent);
  for (int t = 0; t < dd; ++t) {
    Vec<T> a(lp.num_vars);
    for (std::size_t j = 0; j < peers.size(); ++j)
      a[j] = NumOps<T>::from_rational(o.choices.at(peers[j]).coords[t]);
    lp.add_row(std::move(a), Rel::Eq, target[t]);
  }
  lp.add_row(Vec<T>(lp.num_vars, t_of<T>(1)), Rel::Eq, t_of<T>(1));
  lp.lower.assign(lp.num_vars, T{});
  return lp_solve(lp).status != LpStatus::Infeasible;
}

template <class T>
std::vector<int> ext_groups(const Dataset& d, const std::string& agent) {
  std::vector<int> out;
  for (int g : d.groups_of(agent))
    if (!in_peers_hull<T>(d, g, agent)) out.push_back(g);
  return out;
}

template <class T>
std::map<std::string, T> eq1_row_from_ideal(const Dataset& d, int obs_index,
                                            const std::string& agent, const Vec<T>& v) {
  ConeRep<T> rep = cone_rep<T>(d, obs_index, agent);
  const int dd = d.dim();
  const int k = static_cast<int>(rep.generators.size());
  std::map<std::string, T> row;
  if (k == 0) {
    row[agent] = t_of<T>(1);
    return row;
  }
  Mat<T> a(dd, Vec<T>(k));
  Vec<T> b(dd);
  for (int t = 0; t < dd; ++t) {
    for (int j = 0; j < k; ++j) a[t][j] = rep.generators[j][t];
    b[t] = v[t] - rep.apex[t];
  }
  auto scan = scan_basic_solutions(a, b);
  if (!scan.feasible)
    throw Error(ErrorCode::Internal, "ideal point is not in the group's feasible cone");
  T gamma = t_of<T>(1);
  for (const auto& mu : scan.first) gamma += mu;
  row[agent] = t_of<T>(1) / gamma;
  for (int j = 0; j < k; ++j) row[rep.peer_order[j]] = scan.first[j] / gamma;
  return row;
}

template <class T>
ConsistencyVerdict<T> test_glm(const Dataset& d, const std::string& agent,
                               const OutcomeSpace* outcome, const ConsistencyOptions& opt) {
  const OutcomeSpace& y = outcome ? *outcome : d.outcome_space;
  auto groups = agent_groups(d, agent);
  ConsistencyVerdict<T> verdict;
  verdict.agent = agent;
  verdict.model = Model::Glm;

  std::vector<Polytope<T>> cones;
  for (int g : groups) cones.push_back(inverse_cone<T>(d, g, agent, y));
  auto st = intersection_status(cones, /*full=*/false);
  if (st.nonempty) {
    verdict.consistent = true;
    Witness<T> w;
    w.v = st.witness;
    for (int g : groups)
      w.rows[d.observations[g].key()] = eq1_row_from_ideal<T>(d, g, agent, w.v);
    verdict.witness = std::move(w);
    return verdict;
  }
  verdict.consistent = false;
  if (y.kind != OutcomeSpace::Kind::Simplex)
    verdict.certificate_unsupported = true;
  else
    attach_certificate(verdict, d, groups, /*weak_ic=*/false, opt);
  return verdict;
}

template <class T>
ConsistencyVerdict<T> test_glm_star(const Dataset& d, const std::string& agent,
                                    const ConsistencyOptions& opt) {
  auto groups = agent_groups(d, agent);
  ConsistencyVerdict<T> verdict;
  verdict.agent = agent;
  verdict.model = Model::GlmStar;
  auto ext = ext_groups<T>(d, agent);

  if (ext.empty()) {
    verdict.consistent = true;
    Witness<T> w;
    w.v.assign(d.dim(), NumOps<T>::from_rational(Rational(1, d.dim())));
    for (int g : groups) w.rows[d.observations[g].key()] = hull_row<T>(d, g, agent);
    verdict.witness = std::move(w);
    return verdict;
  }

  std::vector<Polytope<T>> cones;
  for (int g : ext) cones.push_back(inverse_cone<T>(d, g, agent, d.outcome_space));
  auto st = intersection_status(cones, /*full=*/false);
  if (st.nonempty) {
    verdict.consistent = true;
    Witness<T> w;
    w.v = st.witness;
    std::set<int> ext_set(ext.begin(), ext.end());
    for (int g : groups) {
      if (ext_set.count(g))
        w.rows[d.observations[g].key()] = eq1_row_from_ideal<T>(d, g, agent, w.v);
      else
        w.rows[d.observations[g].key()] = hull_row<T>(d, g, agent);
    }
    verdict.witness = std::move(w);
    return verdict;
  }
  verdict.consistent = false;
  if (d.outcome_space.kind != OutcomeSpace::Kind::Simplex)
    verdict.certificate_unsupported = true;
  else
    attach_certificate(verdict, d, ext, /*weak_ic=*/false, opt);
  return verdict;
}

template <class T>
ConsistencyVerdict<T> test_llm(const Dataset& d, const std::string& agent,
                               const ConsistencyOptions& opt) {
  auto groups = agent_groups(d, agent);
  const int dd = d.dim();
  std::set<std::string> rivals_set;
  for (int g : groups)
    for (const auto& p : peers_of<T>(d.observations[g], agent)) rivals_set.insert(p);
  std::vector<std::string> rivals(rivals_set.begin(), rivals_set.end());

  // Homogeneous rationalization system, normalized by sum_x f(x) = 1:
  //   f(x) + lambda_g p_i^g(x) + sum_j w_j p_j^g(x) = 0,  f >= 0, w >= 0.
  const int ng = static_cast<int>(groups.size());
  const int nr = static_cast<int>(rivals.size());
  LinearProgram<T> lp;
  lp.num_vars = dd + nr + ng;
  auto wvar = [&](int j) { return dd + j; };
  auto lvar = [&](int g) { return dd + nr + g; };
  for (int g = 0; g < ng; ++g) {
    const Observation& o = d.observations[groups[g]];
    Vec<T> pi = row_as<T>(o, agent);
    for (int x = 0; x < dd; ++x) {
      Vec<T> a(lp.num_vars, T{});
      a[x] = t_of<T>(1);
      a[lvar(g)] = pi[x];
      for (int j = 0; j < nr; ++j)
        if (o.choices.count(rivals[j]))
          a[wvar(j)] = NumOps<T>::from_rational(o.choices.at(rivals[j]).coords[x]);
      lp.add_row(std::move(a), Rel::Eq, T{});
    }
  }
  {
    Vec<T> a(lp.num_vars, T{});
    for (int x = 0; x < dd; ++x) a[x] = t_of<T>(1);
    lp.add_row(std::move(a), Rel::Eq, t_of<T>(1));
  }
  lp.lower.assign(lp.num_vars, std::optional<T>{});
  for (int x = 0; x < dd; ++x) lp.lower[x] = T{};
  for (int j = 0; j < nr; ++j) lp.lower[wvar(j)] = T{};

  ConsistencyVerdict<T> verdict;
  verdict.agent = agent;
  verdict.model = Model::Llm;
  auto out = lp_solve(lp);
  if (out.status != LpStatus::Infeasible) {
    verdict.consistent = true;
    Witness<T> w;
    w.has_w = true;
    w.v.assign(out.assignment.begin(), out.assignment.begin() + dd);
    w.w[agent] = t_of<T>(1);
    for (int j = 0; j < nr; ++j) w.w[rivals[j]] = out.assignment[wvar(j)];
    for (int g = 0; g < ng; ++g) {
      const Observation& o = d.observations[groups[g]];
      T wn = t_of<T>(1);
      for (const auto& p : peers_of<T>(o, agent)) wn += w.w[p];
      std::map<std::string, T> row;
      row[agent] = t_of<T>(1) / wn;
      for (const auto& p : peers_of<T>(o, agent)) row[p] = w.w[p] / wn;
      w.rows[o.key()] = std::move(row);
    }
    verdict.witness = std::move(w);
    return verdict;
  }
  verdict.consistent = false;
  attach_certificate(verdict, d, groups, /*weak_ic=*/true, opt);
  return verdict;
}

template <class T>
OneDimVerdict<T> test_glm_1d(const Dataset& d, const std::string& agent, Model variant) {
  if (d.dim() != 2)
    throw Error(ErrorCode::Dimension, "one-dimensional fast path needs exactly two alternatives");
  if (variant == Model::Llm)
    throw Error(ErrorCode::Usage, "one-dimensional fast path covers glm and glm-star only");
  auto groups = agent_groups(d, agent);
  const bool strict = variant == Model::GlmStar;

  OneDimVerdict<T> res;
  res.lo = T{};
  res.hi = t_of<T>(1);
  bool have_lo = false, have_hi = false;
  std::vector<T> tie_values;

  for (int g : groups) {
    const Observation& o = d.observations[g];
    T pi = NumOps<T>::from_rational(o.choices.at(agent).coords[0]);
    bool is_min = true, is_max = true;
    for (const auto& peer : peers_of<T>(o, agent)) {
      T pj = NumOps<T>::from_rational(o.choices.at(peer).coords[0]);
      int cmp = NumOps<T>::sign(pi - pj);
      if (strict ? cmp >= 0 : cmp > 0) is_min = false;
      if (strict ? cmp <= 0 : cmp < 0) is_max = false;
    }
    if (is_max) {  // ideal point must sit weakly above the agent's own choice
      if (!have_lo || NumOps<T>::lt(res.lo, pi)) res.lo = pi;
      have_lo = true;
    }
    if (is_min) {
      if (!have_hi || NumOps<T>::lt(pi, res.hi)) res.hi = pi;
      have_hi = true;
    }
    if (is_min && is_max) tie_values.push_back(pi);
  }

  auto inconsistent = [&](int cond) {
    res.consistent = false;
    res.violated_condition = cond;
    return res;
  };
  if (have_lo && have_hi && NumOps<T>::lt(res.hi, res.lo)) return inconsistent(1);
  if (!strict) {
    for (std::size_t i = 1; i < tie_values.size(); ++i)
      if (!NumOps<T>::eq(tie_values[i], tie_values[0])) return inconsistent(2);
    if (!tie_values.empty() &&
        (!NumOps<T>::eq(res.lo, tie_values[0]) || !NumOps<T>::eq(res.hi, tie_values[0])))
      return inconsistent(3);
  }
  res.consistent = true;
  return res;
}

template <class T>
bool samet_no_trade_check(const Dataset& d, const std::string& agent, int vertex_cap) {
  auto groups = agent_groups(d, agent);
  const int dd = d.dim();
  const int ng = static_cast<int>(groups.size());
  OutcomeSpace simplex = OutcomeSpace::simplex(dd);

  std::vector<Mat<T>> verts(ng);
  for (int g = 0; g < ng; ++g)
    verts[g] = enumerate_vertices(inverse_cone<T>(d, groups[g], agent, simplex), vertex_cap);

  const int eps = ng * dd;
  LinearProgram<T> lp;
  lp.num_vars = eps + 1;
  for (int x = 0; x < dd; ++x) {  // balanced scheme
    Vec<T> a(lp.num_vars, T{});
    for (int g = 0; g < ng; ++g) a[g * dd + x] = t_of<T>(1);
    lp.add_row(std::move(a), Rel::Eq, T{});
  }
  for (int g = 0; g < ng; ++g)
    for (const auto& v : verts[g]) {  // profitable against every belief
      Vec<T> a(lp.num_vars, T{});
      for (int x = 0; x < dd; ++x) a[g * dd + x] = v[x];
      a[eps] = t_of<T>(-1);
      lp.add_row(std::move(a), Rel::Ge, T{});
    }
  lp.lower.assign(lp.num_vars, t_of<T>(-1));
  lp.upper.assign(lp.num_vars, t_of<T>(1));
  lp.objective = Vec<T>(lp.num_vars, T{});
  (*lp.objective)[eps] = t_of<T>(1);
  lp.maximize = true;
  auto out = lp_solve(lp);
  if (out.status != LpStatus::Optimal)
    throw Error(ErrorCode::Internal, "no-trade program did not optimize");
  return NumOps<T>::sign(out.value) <= 0;
}

template <class T>
Certificate<T> solve_money_pump(const Dataset& d, const std::string& agent, Model model) {
  auto groups = agent_groups(d, agent);
  if (model == Model::GlmStar) groups = ext_groups<T>(d, agent);
  if (groups.empty()) {  // nothing to bet on: the zero pump with zero margin
    return Certificate<T>{};
  }
  return money_pump_over<T>(d, agent, groups, model == Model::Llm);
}

template <class T>
bool verify_witness(const Dataset& d, const std::string& agent, Model model, const Witness<T>& w,
                    std::string* why, const OutcomeSpace* outcome) {
  const OutcomeSpace& y = outcome ? *outcome : d.outcome_space;
  const int dd = d.dim();
  if (static_cast<int>(w.v.size()) != dd) return fail<T>(why, "ideal point has wrong dimension");

  if (model == Model::Llm || y.kind == OutcomeSpace::Kind::Simplex) {
    T sum{};
    for (const auto& vi : w.v) {
      if (NumOps<T>::sign(vi) < 0) return fail<T>(why, "ideal point leaves the simplex");
      sum += vi;
    }
    if (!NumOps<T>::eq(sum, t_of<T>(1))) return fail<T>(why, "ideal point mass is not 1");
  } else {
    for (std::size_t k = 0; k < y.a.size(); ++k) {
      T lhs{};
      for (int t = 0; t < dd; ++t) lhs += NumOps<T>::from_rational(y.a[k][t]) * w.v[t];
      if (NumOps<T>::sign(lhs - NumOps<T>::from_rational(y.c[k])) > 0)
        return fail<T>(why, "ideal point violates the outcome polytope");
    }
  }

  auto groups = d.groups_of(agent);
  if (groups.empty()) return fail<T>(why, "agent not observed");
  if (w.rows.size() != groups.size())
    return fail<T>(why, "witness must carry one influence row per observed group");

  for (int g : groups) {
    const Observation& o = d.observations[g];
    auto it = w.rows.find(o.key());
    if (it == w.rows.end()) return fail<T>(why, "missing influence row for {" + o.key() + "}");
    const auto& row = it->second;
    if (row.size() != o.group.size())
      return fail<T>(why, "row size mismatch in {" + o.key() + "}");
    T sum{};
    for (const auto& member : o.sorted_members()) {
      auto w_it = row.find(member);
      if (w_it == row.end())
        return fail<T>(why, "row misses member '" + member + "' in {" + o.key() + "}");
      if (NumOps<T>::sign(w_it->second) < 0)
        return fail<T>(why, "negative influence weight in {" + o.key() + "}");
      sum += w_it->second;
    }
    if (!NumOps<T>::eq(sum, t_of<T>(1)))
      return fail<T>(why, "influence row does not sum to 1 in {" + o.key() + "}");
    int self_sign = NumOps<T>::sign(row.at(agent));
    if (model != Model::GlmStar && self_sign <= 0)
      return fail<T>(why, "self-weight must be positive in {" + o.key() + "}");

    Vec<T> reproduced(dd, T{});
    for (int t = 0; t < dd; ++t) reproduced[t] = row.at(agent) * w.v[t];
    for (const auto& peer : peers_of<T>(o, agent)) {
      for (int t = 0; t < dd; ++t)
        reproduced[t] += row.at(peer) * NumOps<T>::from_rational(o.choices.at(peer).coords[t]);
    }
    Vec<T> pi = row_as<T>(o, agent);
    for (int t = 0; t < dd; ++t)
      if (!NumOps<T>::eq(reproduced[t], pi[t]))
        return fail<T>(why, "influence row does not reproduce the choice in {" + o.key() + "}");
  }

  if (model == Model::Llm) {
    if (!w.has_w) return fail<T>(why, "luce witness must carry the weight vector");
    auto self = w.w.find(agent);
    if (self == w.w.end() || !NumOps<T>::eq(self->second, t_of<T>(1)))
      return fail<T>(why, "luce weights must be normalized to w(agent) = 1");
    for (const auto& [who, wt] : w.w)
      if (NumOps<T>::sign(wt) < 0) return fail<T>(why, "negative luce weight for " + who);
    for (int g : groups) {
      const Observation& o = d.observations[g];
      T wn{};
      for (const auto& member : o.sorted_members()) {
        auto w_it = w.w.find(member);
        if (w_it == w.w.end()) return fail<T>(why, "luce weights miss member '" + member + "'");
        wn += w_it->second;
      }
      if (NumOps<T>::sign(wn) <= 0) return fail<T>(why, "luce normalizer vanishes");
      const auto& row = w.rows.at(o.key());
      for (const auto& member : o.sorted_members())
        if (!NumOps<T>::eq(row.at(member) * wn, w.w.at(member)))
          return fail<T>(why, "influence row is not the renormalized weight vector");
    }
  }
  return true;
}

template <class T>
bool verify_money_pump(const Dataset& d, const std::string& agent, Model model, const Bet<T>& bet,
                       T* margin, std::string* why) {
  auto groups = d.groups_of(agent);
  if (groups.empty()) return fail<T>(why, "agent not observed");
  const int dd = d.dim();

  std::vector<int> required;
  for (int g : groups) {
    if (model == Model::GlmStar) {
      const Observation& o = d.observations[g];
      Mat<T> peers;
      for (const auto& p : peers_of<T>(o, agent)) peers.push_back(row_as<T>(o, p));
      if (hull_contains_enum(peers, row_as<T>(o, agent))) continue;
    }
    required.push_back(g);
  }
  if (bet.per_group.size() != required.size())
    return fail<T>(why, "bet must cover exactly the testable groups");
  for (int g : required)
    if (!bet.per_group.count(d.observations[g].key()))
      return fail<T>(why, "bet misses group {" + d.observations[g].key() + "}");

  // strict feasibility
  T m{};
  bool first = true;
  for (int x = 0; x < dd; ++x) {
    T total{};
    for (int g : required) total += bet.per_group.at(d.observations[g].key()).at(x);
    T slack = -total;
    if (first || NumOps<T>::lt(slack, m)) m = slack;
    first = false;
  }
  // individual rationality
  for (int g : required) {
    const Observation& o = d.observations[g];
    T payoff = dot(bet.per_group.at(o.key()), row_as<T>(o, agent));
    if (NumOps<T>::lt(payoff, m)) m = payoff;
  }
  // incentive compatibility
  if (model == Model::Llm) {
    std::set<std::string> rivals;
    for (int g : required)
      for (const auto& p : peers_of<T>(d.observations[g], agent)) rivals.insert(p);
    for (const auto& rival : rivals) {
      T total{};
      for (int g : required) {
        const Observation& o = d.observations[g];
        if (!o.choices.count(rival)) continue;
        Vec<T> diff = row_as<T>(o, agent);
        Vec<T> pj = row_as<T>(o, rival);
        for (int t = 0; t < dd; ++t) diff[t] -= pj[t];
        total += dot(bet.per_group.at(o.key()), diff);
      }
      if (NumOps<T>::sign(total) < 0)
        return fail<T>(why, "aggregated incentive compatibility fails against " + rival);
    }
  } else {
    for (int g : required) {
      const Observation& o = d.observations[g];
      for (const auto& peer : peers_of<T>(o, agent)) {
        Vec<T> diff = row_as<T>(o, agent);
        Vec<T> pj = row_as<T>(o, peer);
        for (int t = 0; t < dd; ++t) diff[t] -= pj[t];
        if (NumOps<T>::sign(dot(bet.per_group.at(o.key()), diff)) < 0)
          return fail<T>(why, "incentive compatibility fails in {" + o.key() + "}");
      }
    }
  }
  if (margin) *margin = m;
  if (NumOps<T>::sign(m) <= 0) return fail<T>(why, "margin is not strictly positive");
  return true;
}

#define LIM_CONSISTENCY_IMPL(T)                                                              \
  template bool in_peers_hull<T>(const Dataset&, int, const std::string&);                   \
  template std::vector<int> ext_groups<T>(const Dataset&, const std::string&);               \
  template ConsistencyVerdict<T> test_glm<T>(const Dataset&, const std::string&,             \
                                             const OutcomeSpace*, const ConsistencyOptions&); \
  template ConsistencyVerdict<T> test_glm_star<T>(const Dataset&, const std::string&,        \
                                                  const ConsistencyOptions&);                \
  template ConsistencyVerdict<T> test_llm<T>(const Dataset&, const std::string&,             \
                                             const ConsistencyOptions&);                     \
  template OneDimVerdict<T> test_glm_1d<T>(const Dataset&, const std::string&, Model);       \
  template bool samet_no_trade_check<T>(const Dataset&, const std::string&, int);            \
  template Certificate<T> solve_money_pump<T>(const Dataset&, const std::string&, Model);    \
  template bool verify_witness<T>(const Dataset&, const std::string&, Model,                 \
                                  const Witness<T>&, std::string*, const OutcomeSpace*);     \
  template bool verify_money_pump<T>(const Dataset&, const std::string&, Model,              \
                                     const Bet<T>&, T*, std::string*);                       \
  template std::map<std::string, T> eq1_row_from_ideal<T>(const Dataset&, int,               \
                                                          const std::string&, const Vec<T>&);

LIM_CONSISTENCY_IMPL(Rational)
LIM_CONSISTENCY_IMPL(FloatNum)
#undef LIM_CONSISTENCY_IMPL

}  // namespace lim
