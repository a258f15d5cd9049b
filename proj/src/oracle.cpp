#include "oracle.hpp"

#include <algorithm>
#include <functional>

#include "errors.hpp"
#include "linalg.hpp"

namespace lim {

namespace {

// Visits all compositions of `total` into `parts` nonnegative summands in
// lexicographic order.
void for_each_composition(int total, int parts, std::vector<int>& current,
                          const std::function<void(const std::vector<int>&)>& fn) {
  if (parts == 1) {
    current.push_back(total);
    fn(current);
    current.pop_back();
    return;
  }
  for (int head = 0; head <= total; ++head) {
    current.push_back(head);
    for_each_composition(total - head, parts - 1, current, fn);
    current.pop_back();
  }
}

bool on_grid(const Rational& q, long resolution) {
  Rational scaled = q * resolution;
  return scaled.get_den() == 1;
}

}  // namespace

std::optional<GridWitness> grid_glm_oracle(const Dataset& d, const std::string& agent,
                                           const GridSpec& grid) {
  if (grid.resolution < 1 || grid.weight_resolution < 1)
    throw Error(ErrorCode::Usage, "grid resolutions must be at least 1");
  auto groups = d.groups_of(agent);
  if (groups.empty())
    throw Error(ErrorCode::UnknownAgent, "agent '" + agent + "' is not observed in any group");
  if (d.dim() > 4) throw Error(ErrorCode::Capacity, "grid search is capped at 4 alternatives");
  if (groups.size() > 4) throw Error(ErrorCode::Capacity, "grid search is capped at 4 groups");
  for (int g : groups)
    if (d.observations[g].group.size() > 3)
      throw Error(ErrorCode::Capacity, "grid search is capped at group size 3");

  const int dd = d.dim();
  const long K = grid.resolution;
  const long M = grid.weight_resolution;

  // Per group, every weight row on the M-grid with self-weight >= 1/M pins
  // the ideal point exactly; collect those landing on the K-grid.
  std::vector<std::map<Vec<Rational>, std::map<std::string, Rational>>> found(groups.size());
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const Observation& o = d.observations[groups[gi]];
    auto members = o.sorted_members();
    const int n = static_cast<int>(members.size());
    Vec<Rational> target = o.choices.at(agent).coords;
    int self_index = 0;
    while (members[self_index] != agent) ++self_index;

    std::vector<int> scratch;
    for_each_composition(static_cast<int>(M), n, scratch, [&](const std::vector<int>& parts) {
      if (parts[self_index] < 1) return;
      // candidate ideal: (p_i - sum_j (w_j/M) p_j) * (M / w_self)
      Vec<Rational> v(dd);
      for (int t = 0; t < dd; ++t) {
        Rational acc = target[t] * M;
        for (int j = 0; j < n; ++j) {
          if (j == self_index) continue;
          acc -= Rational(parts[j]) * o.choices.at(members[j]).coords[t];
        }
        v[t] = acc / parts[self_index];
        if (sgn(v[t]) < 0) return;
      }
      for (int t = 0; t < dd; ++t)
        if (!on_grid(v[t], K)) return;
      auto it = found[gi].find(v);
      if (it != found[gi].end()) return;  // keep the first (lexicographic) row
      std::map<std::string, Rational> row;
      for (int j = 0; j < n; ++j) row[members[j]] = make_rational(parts[j], M);
      found[gi].emplace(std::move(v), std::move(row));
    });
  }

  // Intersect the per-group candidate sets; report the smallest ideal point.
  for (const auto& [v, row0] : found[0]) {
    bool everywhere = true;
    for (std::size_t gi = 1; gi < groups.size() && everywhere; ++gi)
      if (!found[gi].count(v)) everywhere = false;
    if (!everywhere) continue;
    GridWitness w;
    w.ideal = v;
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
      w.weights[d.observations[groups[gi]].key()] = found[gi].at(v);
    return w;
  }
  return std::nullopt;
}

bool hull_membership_oracle(const Vec<Rational>& point, const Mat<Rational>& hull_points) {
  if (hull_points.size() > 4)
    throw Error(ErrorCode::Capacity, "hull oracle is capped at 4 points");
  if (point.size() > 4) throw Error(ErrorCode::Capacity, "hull oracle is capped at dimension 4");
  if (hull_points.empty()) return false;
  const int dd = static_cast<int>(point.size());
  const int k = static_cast<int>(hull_points.size());
  for (const auto& p : hull_points)
    if (static_cast<int>(p.size()) != dd)
      throw Error(ErrorCode::Dimension, "hull points have mixed dimensions");

  Mat<Rational> a(dd + 1, Vec<Rational>(k));
  Vec<Rational> b(dd + 1);
  for (int t = 0; t < dd; ++t) {
    for (int j = 0; j < k; ++j) a[t][j] = hull_points[j][t];
    b[t] = point[t];
  }
  for (int j = 0; j < k; ++j) a[dd][j] = 1;
  b[dd] = 1;
  return scan_basic_solutions(a, b).feasible;
}

}  // namespace lim
