#pragma once

#include <map>
#include <optional>
#include <string>

#include "dataset.hpp"

namespace lim {

// Exhaustive validators for small instances. Deliberately exponential and
// solver-free: they share nothing with the linear-programming path they are
// used to certify.
struct GridSpec {
  int resolution = 30;         // ideal-point grid: coordinates in multiples of 1/K
  int weight_resolution = 30;  // per-group weight grid, self-weight >= 1/M
};

struct GridWitness {
  Vec<Rational> ideal;
  std::map<std::string, std::map<std::string, Rational>> weights;  // group key -> row
};

// Scans all grid ideal points and grid weight rows that reproduce every
// observed row of the agent exactly. Capacity: at most 4 alternatives, at
// most 4 groups containing the agent, group sizes at most 3.
std::optional<GridWitness> grid_glm_oracle(const Dataset& d, const std::string& agent,
                                           const GridSpec& grid);

// Convex hull membership by enumerating barycentric solutions over basic
// point subsets; rank-deficient configurations are covered by the subset
// scan. Capacity: at most 4 hull points in dimension at most 4.
bool hull_membership_oracle(const Vec<Rational>& point, const Mat<Rational>& hull_points);

}  // namespace lim
