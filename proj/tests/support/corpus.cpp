#include "support/corpus.hpp"

#include <algorithm>
#include <set>

#include "consistency.hpp"
#include "geometry.hpp"
#include "identify.hpp"

namespace lim::test {

namespace {

std::vector<std::string> agent_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("a" + std::to_string(i + 1));
  return out;
}

std::vector<std::string> alternative_labels(int d) {
  std::vector<std::string> out;
  for (int i = 0; i < d; ++i) out.push_back(std::string(1, static_cast<char>('w' + i)));
  return out;
}

// Distinct random subsets, sizes 1..3, at most `max_groups` of them.
std::vector<std::vector<std::string>> random_groups(Prng& rng,
                                                    const std::vector<std::string>& agents,
                                                    int max_groups) {
  std::set<std::vector<std::string>> seen;
  std::vector<std::vector<std::string>> out;
  int attempts = 0;
  int want = rng.uniform_int(2, max_groups);
  while (static_cast<int>(out.size()) < want && attempts++ < 200) {
    int size = rng.uniform_int(1, std::min<int>(3, static_cast<int>(agents.size())));
    std::set<std::string> pick;
    while (static_cast<int>(pick.size()) < size)
      pick.insert(agents[rng.uniform_int(0, static_cast<int>(agents.size()) - 1)]);
    std::vector<std::string> group(pick.begin(), pick.end());
    if (seen.insert(group).second) out.push_back(std::move(group));
  }
  return out;
}

// Moves 1/16 of mass between two coordinates of one row; exact and
// simplex-preserving. Returns false when no donor coordinate exists.
bool perturb_one_row(Prng& rng, Dataset& d) {
  if (d.observations.empty()) return false;
  Observation& o = d.observations[rng.uniform_int(0, static_cast<int>(d.observations.size()) - 1)];
  auto members = o.sorted_members();
  const std::string& who = members[rng.uniform_int(0, static_cast<int>(members.size()) - 1)];
  auto& coords = o.choices.at(who).coords;
  const Rational delta = make_rational(1, 16);
  for (int tries = 0; tries < 8; ++tries) {
    int from = rng.uniform_int(0, static_cast<int>(coords.size()) - 1);
    int to = rng.uniform_int(0, static_cast<int>(coords.size()) - 1);
    if (from == to || coords[from] < delta) continue;
    coords[from] -= delta;
    coords[to] += delta;
    return true;
  }
  return false;
}

// Adds a sum-zero shock to every member of one group when it stays inside
// the simplex.
bool inject_shock(Prng& rng, Dataset& d) {
  if (d.observations.empty() || d.dim() < 2) return false;
  Observation& o = d.observations[rng.uniform_int(0, static_cast<int>(d.observations.size()) - 1)];
  const Rational delta = make_rational(1, 16);
  int up = rng.uniform_int(0, d.dim() - 1);
  int down = (up + 1) % d.dim();
  for (const auto& [agent, row] : o.choices) {
    (void)agent;
    if (row.coords[down] < delta || row.coords[up] > 1 - delta) return false;
  }
  for (auto& [agent, row] : o.choices) {
    (void)agent;
    row.coords[up] += delta;
    row.coords[down] -= delta;
  }
  return true;
}

SpecKind kind_of(int index) {
  static const SpecKind kinds[] = {SpecKind::Uniform,
                                   SpecKind::Luce,
                                   SpecKind::Club,
                                   SpecKind::Friendship,
                                   SpecKind::RandomParticipation,
                                   SpecKind::RandomArrival,
                                   SpecKind::General};
  return kinds[index % 7];
}

}  // namespace

std::vector<CorpusItem> make_corpus(int count, std::uint64_t seed) {
  std::vector<CorpusItem> out;
  Prng rng(seed);
  int made = 0;
  while (made < count) {
    CorpusItem item;
    item.kind = kind_of(made);
    const int n_agents = rng.uniform_int(2, 5);
    const int dim = rng.uniform_int(2, 4);

    SimPlan plan;
    plan.agents = agent_labels(n_agents);
    plan.alternatives = alternative_labels(dim);
    plan.groups = random_groups(rng, plan.agents, 6);
    if (plan.groups.empty()) continue;
    for (const auto& a : plan.agents)
      plan.ideals.emplace(a, SimplexVector::checked(rng.grid_simplex(dim, 16), "corpus ideal"));

    InfluenceSpec spec;
    spec.kind = item.kind;
    GroundTruth gt;
    try {
      gt = generate_dataset(spec, plan, rng.next());
    } catch (const Error&) {
      continue;  // e.g. a degenerate random draw; take another
    }

    item.dataset = gt.dataset;
    item.truth = std::move(gt);
    int fate = rng.uniform_int(0, 9);
    if (fate < 3) {
      Dataset mutated = item.dataset;
      if (perturb_one_row(rng, mutated)) {
        item.dataset = std::move(mutated);
        item.truth.reset();
        item.perturbed = true;
      }
    } else if (fate == 3 && item.kind == SpecKind::Uniform) {
      Dataset mutated = item.dataset;
      if (inject_shock(rng, mutated)) {
        item.dataset = std::move(mutated);
        item.truth.reset();
        item.shock_injected = true;
      }
    }
    item.name = "corpus-" + std::to_string(made);
    out.push_back(std::move(item));
    ++made;
  }
  return out;
}

std::vector<CorpusItem> make_identifiable_corpus(int count, std::uint64_t seed) {
  std::vector<CorpusItem> out;
  Prng rng(seed);
  while (static_cast<int>(out.size()) < count) {
    const int n_agents = rng.uniform_int(3, 4);
    const int dim = rng.uniform_int(3, 4);
    SimPlan plan;
    plan.agents = agent_labels(n_agents);
    plan.alternatives = alternative_labels(dim);
    for (int i = 0; i < n_agents; ++i)
      for (int j = i + 1; j < n_agents; ++j)
        plan.groups.push_back({plan.agents[i], plan.agents[j]});
    for (const auto& a : plan.agents)
      plan.ideals.emplace(a, SimplexVector::checked(rng.grid_simplex(dim, 16), "corpus ideal"));

    InfluenceSpec spec;
    spec.kind = SpecKind::Luce;
    for (const auto& i : plan.agents)
      for (const auto& j : plan.agents) spec.w[i][j] = rng.dyadic_positive(4);

    GroundTruth gt;
    try {
      gt = generate_dataset(spec, plan, rng.next());
    } catch (const Error&) {
      continue;
    }

    // Keep only draws where every ideal is point identified and every group
    // configuration is affinely independent for every member.
    bool good = true;
    for (const auto& agent : plan.agents) {
      try {
        auto ident = point_identify_ideal<Rational>(gt.dataset, agent, Model::Glm);
        if (!ident.point || ident.value != gt.ideals.at(agent).coords) {
          good = false;
          break;
        }
      } catch (const Error&) {
        good = false;
        break;
      }
      for (int g : gt.dataset.groups_of(agent)) {
        const Observation& o = gt.dataset.observations[g];
        Mat<Rational> pts{gt.ideals.at(agent).coords};
        for (const auto& m : o.sorted_members())
          if (m != agent) pts.push_back(o.choices.at(m).coords);
        if (!affinely_independent(pts)) {
          good = false;
          break;
        }
      }
      if (!good) break;
    }
    if (!good) continue;

    CorpusItem item;
    item.kind = SpecKind::Luce;
    item.dataset = gt.dataset;
    item.truth = std::move(gt);
    item.name = "identifiable-" + std::to_string(out.size());
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<CorpusItem> make_grid_corpus(int count, std::uint64_t seed) {
  std::vector<CorpusItem> out;
  Prng rng(seed);
  const long M = 16;
  while (static_cast<int>(out.size()) < count) {
    const int n_agents = rng.uniform_int(2, 4);
    const int dim = rng.uniform_int(2, 4);
    SimPlan plan;
    plan.agents = agent_labels(n_agents);
    plan.alternatives = alternative_labels(dim);
    plan.groups = random_groups(rng, plan.agents, 4);
    if (plan.groups.empty()) continue;
    bool sizes_ok = true;
    for (const auto& g : plan.groups)
      if (g.size() > 3) sizes_ok = false;
    if (!sizes_ok) continue;
    for (const auto& a : plan.agents)
      plan.ideals.emplace(a, SimplexVector::checked(rng.grid_simplex(dim, 16), "corpus ideal"));

    // Explicit rows on the 1/M grid with self-weight at least 1/M.
    InfluenceSpec spec;
    spec.kind = SpecKind::General;
    for (const auto& group : plan.groups) {
      auto members = group;
      std::sort(members.begin(), members.end());
      const int n = static_cast<int>(members.size());
      for (const auto& i : members) {
        std::map<std::string, Rational> row;
        if (n == 1) {
          row[i] = 1;
        } else {
          long left = M;
          long self_slot = 1 + rng.uniform_int(0, static_cast<int>(M) - n);
          row[i] = make_rational(self_slot, M);
          left -= self_slot;
          int others = n - 1;
          for (const auto& j : members) {
            if (j == i) continue;
            long take = others == 1 ? left : rng.uniform_int(0, static_cast<int>(left));
            row[j] = make_rational(take, M);
            left -= take;
            --others;
          }
        }
        spec.pi[group_key(group)][i] = std::move(row);
      }
    }

    GroundTruth gt;
    try {
      gt = generate_dataset(spec, plan, rng.next());
    } catch (const Error&) {
      continue;
    }
    CorpusItem item;
    item.kind = SpecKind::General;
    item.dataset = gt.dataset;
    item.truth = std::move(gt);
    if (rng.uniform_int(0, 2) == 0) {
      Dataset mutated = item.dataset;
      if (perturb_one_row(rng, mutated)) {
        item.dataset = std::move(mutated);
        item.truth.reset();
        item.perturbed = true;
      }
    }
    item.name = "grid-" + std::to_string(out.size());
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace lim::test
