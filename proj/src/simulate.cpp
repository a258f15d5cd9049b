#include "simulate.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "errors.hpp"
#include "identify.hpp"

namespace lim {

using nlohmann::json;

const char* spec_kind_name(SpecKind k) {
  switch (k) {
    case SpecKind::Uniform: return "uniform";
    case SpecKind::Luce: return "luce";
    case SpecKind::Club: return "club";
    case SpecKind::Friendship: return "friendship";
    case SpecKind::RandomParticipation: return "random_participation";
    case SpecKind::RandomArrival: return "random_arrival";
    case SpecKind::General: return "general";
  }
  return "?";
}

int Prng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational Prng::dyadic(int bits) {
  std::uint64_t den = 1ull << bits;
  return make_rational(static_cast<long>(next() % den), static_cast<long>(den));
}

Rational Prng::dyadic_positive(int bits) {
  std::uint64_t den = 1ull << bits;
  return make_rational(static_cast<long>(next() % den) + 1, static_cast<long>(den));
}

Vec<Rational> Prng::grid_simplex(int dim, int resolution) {
  // random composition of `resolution` into dim nonnegative parts
  std::vector<int> cuts;
  for (int i = 0; i < dim - 1; ++i) cuts.push_back(uniform_int(0, resolution));
  cuts.push_back(0);
  cuts.push_back(resolution);
  std::sort(cuts.begin(), cuts.end());
  Vec<Rational> out;
  for (int i = 0; i + 1 < static_cast<int>(cuts.size()); ++i)
    out.push_back(make_rational(cuts[i + 1] - cuts[i], resolution));
  return out;
}

namespace {

Rational spec_number(const json& v, const std::string& where) {
  if (v.is_string()) return parse_number(v.get<std::string>());
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  throw Error(ErrorCode::Schema, where + ": expected a number string");
}

void check_positive(const Rational& q, const std::string& where) {
  if (sgn(q) <= 0) throw Error(ErrorCode::Schema, where + ": must be positive");
}

void check_unit_interval(const Rational& q, const std::string& where) {
  if (sgn(q) <= 0 || q >= 1)
    throw Error(ErrorCode::Schema, where + ": must lie strictly between 0 and 1");
}

std::map<std::string, Rational> weight_map(const json& v, const std::string& where) {
  std::map<std::string, Rational> out;
  if (!v.is_object()) throw Error(ErrorCode::Schema, where + ": expected an object");
  for (auto it = v.begin(); it != v.end(); ++it)
    out[it.key()] = spec_number(it.value(), where + "." + it.key());
  return out;
}

const std::map<std::string, Rational>& agent_weights(const InfluenceSpec& spec,
                                                     const std::string& agent) {
  auto it = spec.w.find(agent);
  if (it == spec.w.end())
    throw Error(ErrorCode::Schema, "spec does not cover agent '" + agent + "'");
  return it->second;
}

Rational weight_of(const std::map<std::string, Rational>& w, const std::string& who,
                   const std::string& where) {
  auto it = w.find(who);
  if (it == w.end()) throw Error(ErrorCode::Schema, where + ": no weight for '" + who + "'");
  return it->second;
}

void assert_row_stochastic(const std::map<std::string, Rational>& row, const std::string& who) {
  Rational sum = 0;
  for (const auto& [peer, wt] : row) {
    if (sgn(wt) < 0)
      throw Error(ErrorCode::Internal, "negative influence weight generated for " + who);
    sum += wt;
  }
  if (sum != 1) throw Error(ErrorCode::Internal, "influence row for " + who + " does not sum to 1");
}

}  // namespace

InfluenceRows build_influence(const InfluenceSpec& spec, const std::vector<std::string>& group) {
  if (group.empty()) throw Error(ErrorCode::Usage, "influence rows need a nonempty group");
  std::vector<std::string> members = group;
  std::sort(members.begin(), members.end());
  const long n = static_cast<long>(members.size());
  InfluenceRows rows;

  switch (spec.kind) {
    case SpecKind::Uniform: {
      for (const auto& i : members)
        for (const auto& j : members) rows[i][j] = Rational(1, n);
      break;
    }
    case SpecKind::Luce: {
      for (const auto& i : members) {
        const auto& wi = agent_weights(spec, i);
        Rational total = 0;
        for (const auto& k : members) total += weight_of(wi, k, "luce weights of " + i);
        check_positive(total, "luce normalizer of " + i);
        for (const auto& j : members) rows[i][j] = wi.at(j) / total;
      }
      break;
    }
    case SpecKind::Club: {
      auto club_of = [&](const std::string& who) {
        for (std::size_t c = 0; c < spec.partition.size(); ++c)
          for (const auto& m : spec.partition[c])
            if (m == who) return static_cast<int>(c);
        throw Error(ErrorCode::Schema, "agent '" + who + "' belongs to no club");
      };
      std::map<int, long> club_presence;  // club -> |P_k intersect N|
      for (const auto& m : members) club_presence[club_of(m)] += 1;
      for (const auto& i : members) {
        auto a_it = spec.club_alpha.find(i);
        if (a_it == spec.club_alpha.end())
          throw Error(ErrorCode::Schema, "spec does not cover agent '" + i + "'");
        const auto& alpha = a_it->second;
        Rational denom = 0;
        for (const auto& [club, cnt] : club_presence) {
          (void)cnt;
          if (club >= static_cast<int>(alpha.size()))
            throw Error(ErrorCode::Schema, "club affinity vector too short for '" + i + "'");
          denom += alpha[club];
        }
        check_positive(denom, "club normalizer of " + i);
        for (const auto& j : members) {
          int cj = club_of(j);
          rows[i][j] = alpha[cj] / denom / Rational(club_presence[cj]);
        }
      }
      break;
    }
    case SpecKind::Friendship: {
      for (const auto& i : members) {
        auto rk_it = spec.rank.find(i);
        auto as_it = spec.alpha_self.find(i);
        if (rk_it == spec.rank.end() || as_it == spec.alpha_self.end())
          throw Error(ErrorCode::Schema, "spec does not cover agent '" + i + "'");
        check_unit_interval(as_it->second, "own-ideal weight of " + i);
        // rank position of j within the present peers, best first
        auto position = [&](const std::string& j) {
          int pos = 1;
          for (const auto& cand : rk_it->second) {
            if (cand == j) return pos;
            if (std::find(members.begin(), members.end(), cand) != members.end() && cand != i)
              ++pos;
          }
          throw Error(ErrorCode::Schema, "ranking of '" + i + "' misses '" + j + "'");
        };
        auto rank_wt = [&](const std::string& j, int pos) {
          auto rw_it = spec.rank_weight.find(j);
          if (rw_it == spec.rank_weight.end() || pos > static_cast<int>(rw_it->second.size()))
            throw Error(ErrorCode::Schema, "no rank weight for '" + j + "' at position " +
                                               std::to_string(pos));
          check_positive(rw_it->second[pos - 1], "rank weight of " + j);
          return rw_it->second[pos - 1];
        };
        Rational denom = 0;
        for (const auto& k : members)
          if (k != i) denom += rank_wt(k, position(k));
        rows[i][i] = as_it->second;
        if (n == 1) {
          rows[i][i] = 1;
          continue;
        }
        check_positive(denom, "friendship normalizer of " + i);
        for (const auto& j : members)
          if (j != i) rows[i][j] = (Rational(1) - as_it->second) * rank_wt(j, position(j)) / denom;
      }
      break;
    }
    case SpecKind::RandomParticipation: {
      if (n > 12)
        throw Error(ErrorCode::Capacity, "participation enumeration is capped at 12 members");
      for (const auto& i : members) {
        const auto& wi = agent_weights(spec, i);
        std::vector<std::string> others;
        for (const auto& m : members)
          if (m != i) others.push_back(m);
        std::map<std::string, Rational> row;
        for (const auto& j : members) row[j] = 0;
        const std::size_t subsets = 1ull << others.size();
        for (std::size_t mask = 0; mask < subsets; ++mask) {
          Rational prob = 1;
          std::vector<std::string> present{i};
          for (std::size_t b = 0; b < others.size(); ++b) {
            auto g_it = spec.gamma.find(others[b]);
            if (g_it == spec.gamma.end())
              throw Error(ErrorCode::Schema, "no attendance probability for '" + others[b] + "'");
            check_unit_interval(g_it->second, "attendance probability of " + others[b]);
            if (mask & (1ull << b)) {
              prob *= g_it->second;
              present.push_back(others[b]);
            } else {
              prob *= Rational(1) - g_it->second;
            }
          }
          Rational total = 0;
          for (const auto& m : present) total += weight_of(wi, m, "base weights of " + i);
          check_positive(total, "participation normalizer of " + i);
          for (const auto& m : present) row[m] += prob * wi.at(m) / total;
        }
        rows[i] = std::move(row);
      }
      break;
    }
    case SpecKind::RandomArrival: {
      if (spec.arrangements.empty())
        throw Error(ErrorCode::Schema, "random arrival needs at least one arrangement");
      Rational psum = 0;
      for (const auto& arr : spec.arrangements) {
        if (sgn(arr.prob) < 0)
          throw Error(ErrorCode::Schema, "arrangement probabilities must be nonnegative");
        psum += arr.prob;
      }
      if (psum != 1)
        throw Error(ErrorCode::Schema, "arrangement probabilities must sum to 1");
      std::map<std::string, Rational> shared;  // the mixture row, member-invariant
      for (const auto& j : members) shared[j] = 0;
      for (const auto& arr : spec.arrangements) {
        Rational total = 0;
        for (const auto& k : members) {
          Rational wk = weight_of(arr.weights, k, "arrangement weights");
          check_positive(wk, "arrangement weight of " + k);
          total += wk;
        }
        for (const auto& j : members) shared[j] += arr.prob * arr.weights.at(j) / total;
      }
      for (const auto& i : members) rows[i] = shared;
      break;
    }
    case SpecKind::General: {
      const std::string key = group_key(group);
      auto g_it = spec.pi.find(key);
      if (g_it == spec.pi.end())
        throw Error(ErrorCode::Schema, "general spec has no rows for group {" + key + "}");
      for (const auto& i : members) {
        auto r_it = g_it->second.find(i);
        if (r_it == g_it->second.end())
          throw Error(ErrorCode::Schema, "general spec misses agent '" + i + "' in {" + key + "}");
        std::map<std::string, Rational> row;
        for (const auto& j : members) row[j] = weight_of(r_it->second, j, "row of " + i);
        rows[i] = std::move(row);
      }
      break;
    }
  }

  for (const auto& i : members) assert_row_stochastic(rows.at(i), i);
  return rows;
}

std::map<std::string, Vec<Rational>> solve_equilibrium(
    const InfluenceRows& rows, const std::map<std::string, Vec<Rational>>& ideals) {
  std::vector<std::string> members;
  for (const auto& [agent, row] : rows) {
    (void)row;
    members.push_back(agent);
  }
  const int n = static_cast<int>(members.size());
  if (n == 0) throw Error(ErrorCode::Usage, "equilibrium needs at least one member");
  int dd = -1;
  for (const auto& m : members) {
    auto it = ideals.find(m);
    if (it == ideals.end())
      throw Error(ErrorCode::Schema, "no ideal point for member '" + m + "'");
    if (dd < 0) dd = static_cast<int>(it->second.size());
  }
  for (const auto& m : members)
    if (sgn(rows.at(m).at(m)) == 0)
      throw Error(ErrorCode::SingularSpec, "zero self-weight for '" + m + "'");

  Mat<Rational> a(n, Vec<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    a[i][i] = 1;
    for (int j = 0; j < n; ++j)
      if (j != i) a[i][j] = -rows.at(members[i]).at(members[j]);
  }
  std::map<std::string, Vec<Rational>> out;
  for (const auto& m : members) out[m] = Vec<Rational>(dd);
  for (int x = 0; x < dd; ++x) {
    Vec<Rational> rhs(n);
    for (int i = 0; i < n; ++i)
      rhs[i] = rows.at(members[i]).at(members[i]) * ideals.at(members[i])[x];
    auto sol = solve_linear(a, rhs);
    if (!sol) throw Error(ErrorCode::Internal, "equilibrium system is singular");
    for (int i = 0; i < n; ++i) out[members[i]][x] = (*sol)[i];
  }

  for (const auto& m : members) {
    Rational sum = 0;
    for (const auto& px : out[m]) {
      if (sgn(px) < 0) throw Error(ErrorCode::Internal, "equilibrium row left the simplex");
      sum += px;
    }
    if (sum != 1) throw Error(ErrorCode::Internal, "equilibrium row mass is not 1");
  }
  std::map<std::string, Vec<Rational>> member_ideals;
  for (const auto& m : members) member_ideals[m] = ideals.at(m);
  if (!verify_equilibrium<Rational>(out, rows, member_ideals))
    throw Error(ErrorCode::Internal, "equilibrium solution fails verification");
  return out;
}

namespace {

void randomize_spec(InfluenceSpec& spec, const SimPlan& plan, Prng& rng) {
  const auto& agents = plan.agents;
  auto fill_weights = [&] {
    if (!spec.w.empty()) return;
    for (const auto& i : agents)
      for (const auto& j : agents) spec.w[i][j] = rng.dyadic_positive(8);
  };
  switch (spec.kind) {
    case SpecKind::Uniform:
      break;
    case SpecKind::Luce:
    case SpecKind::RandomParticipation:
      fill_weights();
      if (spec.kind == SpecKind::RandomParticipation && spec.gamma.empty())
        for (const auto& i : agents)
          spec.gamma[i] = make_rational(rng.uniform_int(1, 1023), 1024);
      break;
    case SpecKind::Club: {
      if (spec.partition.empty()) {
        int clubs = rng.uniform_int(1, std::min<int>(3, static_cast<int>(agents.size())));
        spec.partition.assign(clubs, {});
        for (std::size_t i = 0; i < agents.size(); ++i)
          spec.partition[i < static_cast<std::size_t>(clubs) ? i : rng.uniform_int(0, clubs - 1)]
              .push_back(agents[i]);
      }
      if (spec.club_alpha.empty())
        for (const auto& i : agents) {
          std::vector<Rational> alpha;
          for (std::size_t c = 0; c < spec.partition.size(); ++c)
            alpha.push_back(rng.dyadic_positive(8));
          spec.club_alpha[i] = std::move(alpha);
        }
      break;
    }
    case SpecKind::Friendship: {
      if (spec.rank.empty())
        for (const auto& i : agents) {
          std::vector<std::string> others;
          for (const auto& j : agents)
            if (j != i) others.push_back(j);
          for (std::size_t k = others.size(); k > 1; --k)
            std::swap(others[k - 1], others[rng.uniform_int(0, static_cast<int>(k) - 1)]);
          spec.rank[i] = std::move(others);
        }
      if (spec.alpha_self.empty())
        for (const auto& i : agents)
          spec.alpha_self[i] = make_rational(rng.uniform_int(1, 1023), 1024);
      if (spec.rank_weight.empty())
        for (const auto& j : agents) {
          std::vector<Rational> wts;
          for (std::size_t p = 0; p + 1 < agents.size(); ++p)
            wts.push_back(rng.dyadic_positive(8));
          spec.rank_weight[j] = std::move(wts);
        }
      break;
    }
    case SpecKind::RandomArrival: {
      if (spec.arrangements.empty()) {
        int count = rng.uniform_int(2, 3);
        std::vector<long> mass;
        long total = 0;
        for (int k = 0; k < count; ++k) {
          mass.push_back(rng.uniform_int(1, 16));
          total += mass.back();
        }
        for (int k = 0; k < count; ++k) {
          InfluenceSpec::Arrangement arr;
          arr.prob = make_rational(mass[k], total);
          for (const auto& j : plan.agents) arr.weights[j] = rng.dyadic_positive(8);
          spec.arrangements.push_back(std::move(arr));
        }
      }
      break;
    }
    case SpecKind::General: {
      if (spec.pi.empty())
        for (const auto& group : plan.groups) {
          auto key = group_key(group);
          std::vector<std::string> members = group;
          std::sort(members.begin(), members.end());
          for (const auto& i : members) {
            // random positive weights, normalized exactly
            std::map<std::string, Rational> raw;
            Rational total = 0;
            for (const auto& j : members) {
              raw[j] = rng.dyadic_positive(8);
              total += raw[j];
            }
            for (const auto& j : members) spec.pi[key][i][j] = raw[j] / total;
          }
        }
      break;
    }
  }
}

}  // namespace

GroundTruth generate_dataset(InfluenceSpec spec, SimPlan plan, std::uint64_t seed) {
  if (plan.alternatives.empty())
    throw Error(ErrorCode::Schema, "simulation plan needs alternatives");
  if (plan.agents.empty()) {
    std::set<std::string> agents;
    for (const auto& g : plan.groups) agents.insert(g.begin(), g.end());
    plan.agents.assign(agents.begin(), agents.end());
  }
  Prng rng(seed);
  const int dd = static_cast<int>(plan.alternatives.size());
  for (const auto& agent : plan.agents)
    if (!plan.ideals.count(agent))
      plan.ideals.emplace(agent,
                          SimplexVector::checked(rng.grid_simplex(dd, 1024), "ideal of " + agent));
  randomize_spec(spec, plan, rng);

  GroundTruth gt;
  gt.ideals = plan.ideals;
  gt.dataset.alternatives = plan.alternatives;
  gt.dataset.agents = plan.agents;
  gt.dataset.outcome_space = OutcomeSpace::simplex(dd);

  std::map<std::string, Vec<Rational>> ideal_vecs;
  for (const auto& [agent, sv] : plan.ideals) ideal_vecs[agent] = sv.coords;

  for (const auto& group : plan.groups) {
    InfluenceRows rows = build_influence(spec, group);
    std::map<std::string, Vec<Rational>> local_ideals;
    for (const auto& [agent, row] : rows) {
      (void)row;
      if (!ideal_vecs.count(agent))
        throw Error(ErrorCode::Schema, "no ideal point for agent '" + agent + "'");
      local_ideals[agent] = ideal_vecs.at(agent);
    }
    auto choices = solve_equilibrium(rows, local_ideals);
    Observation o;
    o.group = group;
    for (const auto& [agent, p] : choices)
      o.choices.emplace(agent, SimplexVector::checked(p, "equilibrium row of " + agent));
    gt.rows[o.key()] = std::move(rows);
    gt.dataset.observations.push_back(std::move(o));
  }
  return gt;
}

InfluenceSpec parse_influence_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind"))
    throw Error(ErrorCode::Schema, "influence spec: missing 'kind'");
  std::string kind = doc.at("kind").get<std::string>();

  InfluenceSpec spec;
  if (kind == "uniform") {
    spec.kind = SpecKind::Uniform;
  } else if (kind == "luce" || kind == "random_participation") {
    spec.kind = kind == "luce" ? SpecKind::Luce : SpecKind::RandomParticipation;
    if (doc.contains("w"))
      for (auto it = doc.at("w").begin(); it != doc.at("w").end(); ++it)
        spec.w[it.key()] = weight_map(it.value(), "w." + it.key());
    if (spec.kind == SpecKind::RandomParticipation && doc.contains("gamma"))
      spec.gamma = weight_map(doc.at("gamma"), "gamma");
  } else if (kind == "club") {
    spec.kind = SpecKind::Club;
    if (doc.contains("partition"))
      for (const auto& club : doc.at("partition")) {
        std::vector<std::string> names;
        for (const auto& m : club) names.push_back(m.get<std::string>());
        spec.partition.push_back(std::move(names));
      }
    if (doc.contains("alpha"))
      for (auto it = doc.at("alpha").begin(); it != doc.at("alpha").end(); ++it) {
        std::vector<Rational> alpha;
        for (const auto& v : it.value()) alpha.push_back(spec_number(v, "alpha." + it.key()));
        spec.club_alpha[it.key()] = std::move(alpha);
      }
  } else if (kind == "friendship") {
    spec.kind = SpecKind::Friendship;
    if (doc.contains("rank"))
      for (auto it = doc.at("rank").begin(); it != doc.at("rank").end(); ++it) {
        std::vector<std::string> order;
        for (const auto& m : it.value()) order.push_back(m.get<std::string>());
        spec.rank[it.key()] = std::move(order);
      }
    if (doc.contains("alpha_self")) spec.alpha_self = weight_map(doc.at("alpha_self"), "alpha_self");
    if (doc.contains("rank_weight"))
      for (auto it = doc.at("rank_weight").begin(); it != doc.at("rank_weight").end(); ++it) {
        std::vector<Rational> wts;
        for (const auto& v : it.value()) wts.push_back(spec_number(v, "rank_weight." + it.key()));
        spec.rank_weight[it.key()] = std::move(wts);
      }
  } else if (kind == "random_arrival") {
    spec.kind = SpecKind::RandomArrival;
    if (doc.contains("arrangements"))
      for (const auto& a : doc.at("arrangements")) {
        InfluenceSpec::Arrangement arr;
        arr.prob = spec_number(a.at("prob"), "arrangements.prob");
        arr.weights = weight_map(a.at("weights"), "arrangements.weights");
        spec.arrangements.push_back(std::move(arr));
      }
  } else if (kind == "general") {
    spec.kind = SpecKind::General;
    if (doc.contains("pi"))
      for (auto g = doc.at("pi").begin(); g != doc.at("pi").end(); ++g)
        for (auto a = g.value().begin(); a != g.value().end(); ++a)
          spec.pi[g.key()][a.key()] = weight_map(a.value(), "pi." + g.key() + "." + a.key());
  } else {
    throw Error(ErrorCode::Schema, "unknown influence spec kind '" + kind + "'");
  }
  return spec;
}

std::string serialize_influence_spec(const InfluenceSpec& spec, int indent) {
  json doc;
  doc["kind"] = spec_kind_name(spec.kind);
  auto weights_json = [](const std::map<std::string, Rational>& w) {
    json o = json::object();
    for (const auto& [k, v] : w) o[k] = format_number(v);
    return o;
  };
  if (!spec.w.empty()) {
    json w = json::object();
    for (const auto& [agent, row] : spec.w) w[agent] = weights_json(row);
    doc["w"] = w;
  }
  if (!spec.partition.empty()) doc["partition"] = spec.partition;
  if (!spec.club_alpha.empty()) {
    json a = json::object();
    for (const auto& [agent, alpha] : spec.club_alpha) {
      json arr = json::array();
      for (const auto& v : alpha) arr.push_back(format_number(v));
      a[agent] = arr;
    }
    doc["alpha"] = a;
  }
  if (!spec.rank.empty()) doc["rank"] = spec.rank;
  if (!spec.alpha_self.empty()) doc["alpha_self"] = weights_json(spec.alpha_self);
  if (!spec.rank_weight.empty()) {
    json rw = json::object();
    for (const auto& [agent, wts] : spec.rank_weight) {
      json arr = json::array();
      for (const auto& v : wts) arr.push_back(format_number(v));
      rw[agent] = arr;
    }
    doc["rank_weight"] = rw;
  }
  if (!spec.gamma.empty()) doc["gamma"] = weights_json(spec.gamma);
  if (!spec.arrangements.empty()) {
    json arr = json::array();
    for (const auto& a : spec.arrangements) {
      json o;
      o["prob"] = format_number(a.prob);
      o["weights"] = weights_json(a.weights);
      arr.push_back(o);
    }
    doc["arrangements"] = arr;
  }
  if (!spec.pi.empty()) {
    json p = json::object();
    for (const auto& [group, rows] : spec.pi) {
      json g = json::object();
      for (const auto& [agent, row] : rows) g[agent] = weights_json(row);
      p[group] = g;
    }
    doc["pi"] = p;
  }
  return doc.dump(indent);
}

SimPlan parse_sim_plan(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
  }
  SimPlan plan;
  if (!doc.contains("alternatives") || !doc.contains("groups"))
    throw Error(ErrorCode::Schema, "simulation plan needs 'alternatives' and 'groups'");
  for (const auto& a : doc.at("alternatives")) plan.alternatives.push_back(a.get<std::string>());
  if (doc.contains("agents"))
    for (const auto& a : doc.at("agents")) plan.agents.push_back(a.get<std::string>());
  for (const auto& g : doc.at("groups")) {
    std::vector<std::string> group;
    for (const auto& m : g) group.push_back(m.get<std::string>());
    plan.groups.push_back(std::move(group));
  }
  if (doc.contains("ideals"))
    for (auto it = doc.at("ideals").begin(); it != doc.at("ideals").end(); ++it) {
      std::vector<Rational> coords;
      for (const auto& v : it.value()) coords.push_back(spec_number(v, "ideals." + it.key()));
      plan.ideals.emplace(it.key(),
                          SimplexVector::checked(std::move(coords), "ideal of " + it.key()));
    }
  return plan;
}

std::string serialize_ground_truth(const GroundTruth& gt, int indent) {
  json doc;
  doc["dataset"] = json::parse(serialize_dataset(gt.dataset));
  json ideals = json::object();
  for (const auto& [agent, sv] : gt.ideals) {
    json arr = json::array();
    for (const auto& q : sv.coords) arr.push_back(format_number(q));
    ideals[agent] = arr;
  }
  doc["ideals"] = ideals;
  json rows = json::object();
  for (const auto& [group, agent_rows] : gt.rows) {
    json g = json::object();
    for (const auto& [agent, row] : agent_rows) {
      json r = json::object();
      for (const auto& [member, wt] : row) r[member] = format_number(wt);
      g[agent] = r;
    }
    rows[group] = g;
  }
  doc["rows"] = rows;
  return doc.dump(indent);
}

}  // namespace lim
