#include "ulm.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "errors.hpp"

namespace lim {

namespace {

template <class T>
T t_of(long v) {
  return NumOps<T>::from_rational(Rational(v));
}

bool uniform_group_sizes(const Dataset& d) {
  for (std::size_t i = 1; i < d.observations.size(); ++i)
    if (d.observations[i].group.size() != d.observations[0].group.size()) return false;
  return true;
}

void require_uniform_sizes(const Dataset& d, const char* what) {
  if (!uniform_group_sizes(d))
    throw Error(ErrorCode::Size,
                std::string(what) + " without size correction requires equal group sizes");
}

template <class T>
Vec<T> edge_label(const Dataset& d, int obs_index, const std::string& from, const std::string& to,
                  bool starred) {
  const Observation& o = d.observations[obs_index];
  Vec<T> pi = row_as<T>(o, from);
  Vec<T> pj = row_as<T>(o, to);
  T scale = starred ? t_of<T>(1 + static_cast<long>(o.group.size())) : t_of<T>(1);
  Vec<T> out(pi.size());
  for (std::size_t t = 0; t < pi.size(); ++t) out[t] = scale * (pi[t] - pj[t]);
  return out;
}

template <class T>
bool vec_eq(const Vec<T>& a, const Vec<T>& b) {
  for (std::size_t t = 0; t < a.size(); ++t)
    if (!NumOps<T>::eq(a[t], b[t])) return false;
  return true;
}

}  // namespace

template <class T>
PeerEffect<T> peer_effect(const Dataset& d, int obs_index, const std::string& from,
                          const std::string& to) {
  PeerEffect<T> pe;
  pe.group = d.observations[obs_index].key();
  pe.from_agent = from;
  pe.to_agent = to;
  pe.delta = edge_label<T>(d, obs_index, from, to, false);
  pe.scaled = edge_label<T>(d, obs_index, from, to, true);
  return pe;
}

template <class T>
Vec<T> ulm_implied_ideal(const Dataset& d, int obs_index, const std::string& agent) {
  const Observation& o = d.observations[obs_index];
  Vec<T> v = row_as<T>(o, agent);
  T n = t_of<T>(static_cast<long>(o.group.size()));
  for (auto& x : v) x *= n;
  for (const auto& member : o.sorted_members()) {
    if (member == agent) continue;
    Vec<T> pj = row_as<T>(o, member);
    for (std::size_t t = 0; t < v.size(); ++t) v[t] -= pj[t];
  }
  return v;
}

template <class T>
CyclicResult<T> check_cyclic_constancy(const Dataset& d, bool starred) {
  if (!starred) require_uniform_sizes(d, "cyclic constancy");
  CyclicResult<T> res;

  // Co-membership adjacency.
  std::map<std::string, std::vector<std::pair<std::string, int>>> adj;  // agent -> (peer, obs)
  for (std::size_t i = 0; i < d.observations.size(); ++i) {
    auto members = d.observations[i].sorted_members();
    for (const auto& a : members)
      for (const auto& b : members)
        if (a != b) adj[a].push_back({b, static_cast<int>(i)});
  }

  const int dd = d.dim();
  std::map<std::string, Vec<T>> delta;
  for (const auto& root : d.agents) {
    if (delta.count(root)) continue;
    delta[root] = Vec<T>(dd, T{});
    std::deque<std::string> queue{root};
    while (!queue.empty()) {
      std::string u = queue.front();
      queue.pop_front();
      for (const auto& [w, obs] : adj[u]) {
        if (delta.count(w)) continue;
        // label(u->w) = delta_u - delta_w
        Vec<T> label = edge_label<T>(d, obs, u, w, starred);
        Vec<T> dw(dd);
        for (int t = 0; t < dd; ++t) dw[t] = delta[u][t] - label[t];
        delta[w] = std::move(dw);
        queue.push_back(w);
      }
    }
  }

  // Every edge (not just the BFS tree) must match the potential difference.
  for (std::size_t i = 0; i < d.observations.size(); ++i) {
    auto members = d.observations[i].sorted_members();
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        Vec<T> label = edge_label<T>(d, static_cast<int>(i), members[a], members[b], starred);
        Vec<T> expect(dd);
        for (int t = 0; t < dd; ++t) expect[t] = delta[members[a]][t] - delta[members[b]][t];
        if (!vec_eq(label, expect)) {
          res.pass = false;
          res.violation = EdgeRef{d.observations[i].key(), members[a], members[b]};
          return res;
        }
      }
  }
  res.pass = true;
  res.potentials = std::move(delta);
  return res;
}

template <class T>
SymmetryResult<T> check_symmetric_peer_effects(const Dataset& d, bool starred) {
  if (!starred) require_uniform_sizes(d, "symmetric peer effects");
  SymmetryResult<T> res;
  const int dd = d.dim();

  for (const auto& agent : d.agents) {
    auto groups = d.groups_of(agent);
    for (int gn : groups)
      for (int gm : groups) {
        const Observation& n = d.observations[gn];
        const Observation& m = d.observations[gm];
        std::set<std::string> nset(n.group.begin(), n.group.end());
        std::set<std::string> mset(m.group.begin(), m.group.end());

        Vec<T> pin = row_as<T>(n, agent);
        Vec<T> pim = row_as<T>(m, agent);
        Vec<T> lhs = pin;
        for (const auto& j : n.sorted_members()) {
          if (mset.count(j)) continue;
          Vec<T> pj = row_as<T>(n, j);
          for (int t = 0; t < dd; ++t) lhs[t] -= pj[t] - pin[t];
        }
        Vec<T> rhs = pim;
        for (const auto& k : m.sorted_members()) {
          if (nset.count(k)) continue;
          Vec<T> pk = row_as<T>(m, k);
          for (int t = 0; t < dd; ++t) rhs[t] -= pk[t] - pim[t];
        }
        if (starred) {
          // size correction over the overlap, evaluated in group M
          T factor = (t_of<T>(static_cast<long>(n.group.size())) -
                      t_of<T>(static_cast<long>(m.group.size()))) /
                     t_of<T>(1 + static_cast<long>(n.group.size()));
          for (const auto& l : m.sorted_members()) {
            if (!nset.count(l)) continue;
            Vec<T> pl = row_as<T>(m, l);
            for (int t = 0; t < dd; ++t) rhs[t] -= factor * (pl[t] - pim[t]);
          }
        }
        for (int t = 0; t < dd; ++t) {
          if (!NumOps<T>::eq(lhs[t], rhs[t])) {
            Vec<T> residual(dd);
            for (int s = 0; s < dd; ++s) residual[s] = lhs[s] - rhs[s];
            res.pass = false;
            res.violation = SymmetryViolation<T>{n.key(), m.key(), agent, std::move(residual)};
            return res;
          }
        }
      }
  }
  res.pass = true;
  return res;
}

template <class T>
BoundedResult check_bounded_total(const Dataset& d) {
  BoundedResult res;
  for (std::size_t i = 0; i < d.observations.size(); ++i) {
    const Observation& o = d.observations[i];
    for (const auto& member : o.sorted_members()) {
      Vec<T> vhat = ulm_implied_ideal<T>(d, static_cast<int>(i), member);
      for (std::size_t t = 0; t < vhat.size(); ++t) {
        if (NumOps<T>::sign(vhat[t]) < 0) {  // p_i(t) < total peer effect at t
          res.pass = false;
          res.violation = BoundedViolation{o.key(), member, static_cast<int>(t)};
          return res;
        }
      }
    }
  }
  res.pass = true;
  return res;
}

template <class T>
UlmVerdict<T> test_ulm(const Dataset& d) {
  UlmVerdict<T> verdict;
  verdict.starred = !uniform_group_sizes(d);

  bool ok = true;
  std::optional<VhatMismatch<T>> mismatch;
  std::map<std::string, Vec<T>> ideals;
  std::map<std::string, std::string> first_group;
  for (const auto& agent : d.agents) {
    for (int g : d.groups_of(agent)) {
      Vec<T> vhat = ulm_implied_ideal<T>(d, g, agent);
      auto it = ideals.find(agent);
      if (it == ideals.end()) {
        bool inside = true;
        for (const auto& x : vhat)
          if (NumOps<T>::sign(x) < 0) inside = false;
        if (!inside && !mismatch) {
          mismatch = VhatMismatch<T>{agent, d.observations[g].key(), "", true};
          ok = false;
        }
        ideals[agent] = std::move(vhat);
        first_group[agent] = d.observations[g].key();
      } else if (!vec_eq(it->second, vhat)) {
        if (!mismatch)
          mismatch = VhatMismatch<T>{agent, first_group[agent], d.observations[g].key(), false};
        ok = false;
      }
    }
  }

  if (ok) {
    verdict.consistent = true;
    verdict.ideals = std::move(ideals);
    return verdict;
  }
  verdict.consistent = false;
  verdict.mismatch = mismatch;
  if (!check_cyclic_constancy<T>(d, verdict.starred).pass)
    verdict.failed_axioms.push_back("cyclic-constancy");
  if (!check_symmetric_peer_effects<T>(d, verdict.starred).pass)
    verdict.failed_axioms.push_back("symmetric-peer-effects");
  if (!check_bounded_total<T>(d).pass)
    verdict.failed_axioms.push_back("bounded-total-peer-effects");
  if (verdict.failed_axioms.empty())
    throw Error(ErrorCode::Internal,
                "implied-ideal test failed but every axiom passed (equivalence violated)");
  return verdict;
}

template <class T>
ShockResult<T> decompose_with_shocks(const Dataset& d) {
  ShockResult<T> res;
  auto cyclic = check_cyclic_constancy<T>(d, /*starred=*/true);
  if (!cyclic.pass) {
    res.violation = cyclic.violation;
    return res;
  }
  const int dd = d.dim();
  ShockDecomposition<T> dec;

  // Connected components of co-membership, roots in label order.
  std::map<std::string, int> component;
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& o : d.observations) {
    auto members = o.sorted_members();
    for (const auto& a : members)
      for (const auto& b : members)
        if (a != b) adj[a].insert(b);
  }
  int comp_count = 0;
  for (const auto& root : d.agents) {
    if (component.count(root)) continue;
    int id = comp_count++;
    dec.components.emplace_back();
    std::deque<std::string> queue{root};
    component[root] = id;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      dec.components[id].push_back(u);
      for (const auto& w : adj[u])
        if (!component.count(w)) {
          component[w] = id;
          queue.push_back(w);
        }
    }
    std::sort(dec.components[id].begin(), dec.components[id].end());
  }

  // ideals: uniform anchor plus potentials (potentials are zero at each root)
  const T unif = NumOps<T>::from_rational(Rational(1, dd));
  for (const auto& agent : d.agents) {
    Vec<T> v(dd, unif);
    const Vec<T>& delta = cyclic.potentials.at(agent);
    for (int t = 0; t < dd; ++t) v[t] += delta[t];
    dec.ideals[agent] = std::move(v);
  }

  // shocks: identical for every member by path independence; assert it
  for (std::size_t i = 0; i < d.observations.size(); ++i) {
    const Observation& o = d.observations[i];
    const T n = t_of<T>(static_cast<long>(o.group.size()));
    std::optional<Vec<T>> shock;
    for (const auto& member : o.sorted_members()) {
      Vec<T> pi = row_as<T>(o, member);
      Vec<T> s(dd);
      for (int t = 0; t < dd; ++t) s[t] = pi[t] - dec.ideals.at(member)[t] / n;
      for (const auto& peer : o.sorted_members()) {
        if (peer == member) continue;
        Vec<T> pj = row_as<T>(o, peer);
        for (int t = 0; t < dd; ++t) s[t] -= pj[t] / n;
      }
      if (!shock) {
        shock = std::move(s);
      } else if (!vec_eq(*shock, s)) {
        throw Error(ErrorCode::Internal, "group shock is not member-invariant");
      }
    }
    T total{};
    for (const auto& x : *shock) total += x;
    if (!NumOps<T>::is_zero(total))
      throw Error(ErrorCode::Internal, "group shock does not sum to zero");
    dec.shocks[o.key()] = std::move(*shock);
  }
  res.decomposition = std::move(dec);
  return res;
}

#define LIM_ULM_IMPL(T)                                                                      \
  template PeerEffect<T> peer_effect<T>(const Dataset&, int, const std::string&,             \
                                        const std::string&);                                 \
  template CyclicResult<T> check_cyclic_constancy<T>(const Dataset&, bool);                  \
  template SymmetryResult<T> check_symmetric_peer_effects<T>(const Dataset&, bool);          \
  template BoundedResult check_bounded_total<T>(const Dataset&);                             \
  template UlmVerdict<T> test_ulm<T>(const Dataset&);                                        \
  template ShockResult<T> decompose_with_shocks<T>(const Dataset&);                          \
  template Vec<T> ulm_implied_ideal<T>(const Dataset&, int, const std::string&);

LIM_ULM_IMPL(Rational)
LIM_ULM_IMPL(FloatNum)
#undef LIM_ULM_IMPL

}  // namespace lim
