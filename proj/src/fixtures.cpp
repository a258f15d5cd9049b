#include "fixtures.hpp"

namespace lim::fixtures {

namespace {

SimplexVector sv(std::initializer_list<const char*> entries) {
  std::vector<Rational> coords;
  for (const char* e : entries) coords.push_back(parse_number(e));
  return SimplexVector::checked(std::move(coords), "fixture");
}

Observation obs(std::vector<std::string> group,
                std::vector<std::pair<std::string, SimplexVector>> rows) {
  Observation o;
  o.group = std::move(group);
  for (auto& [agent, row] : rows) o.choices.emplace(agent, std::move(row));
  return o;
}

}  // namespace

Dataset abc() {
  Dataset d;
  d.alternatives = {"tennis", "volleyball", "walking"};
  d.agents = {"Ann", "Ben", "Can"};
  d.observations.push_back(obs({"Ann", "Ben"}, {{"Ann", sv({"0.5", "0.1", "0.4"})},
                                                {"Ben", sv({"0.7", "0.1", "0.2"})}}));
  d.observations.push_back(obs({"Ann", "Can"}, {{"Ann", sv({"0.1", "0.5", "0.4"})},
                                                {"Can", sv({"0.1", "0.7", "0.2"})}}));
  d.outcome_space = OutcomeSpace::simplex(3);
  return d;
}

Dataset abc_three_semesters() {
  Dataset d = abc();
  d.observations.push_back(obs({"Ben", "Can"}, {{"Ben", sv({"19/30", "11/30", "0"})},
                                                {"Can", sv({"11/30", "19/30", "0"})}}));
  return d;
}

Dataset two_sports() {
  Dataset d;
  d.alternatives = {"volleyball", "walking"};
  d.agents = {"Ann", "Ben", "Can"};
  d.observations.push_back(obs({"Ann", "Ben"}, {{"Ann", sv({"0.8", "0.2"})},
                                                {"Ben", sv({"0.9", "0.1"})}}));
  d.observations.push_back(obs({"Ann", "Can"}, {{"Ann", sv({"0.7", "0.3"})},
                                                {"Can", sv({"0.85", "0.15"})}}));
  d.outcome_space = OutcomeSpace::simplex(2);
  return d;
}

Dataset two_sports_inconsistent() {
  Dataset d;
  d.alternatives = {"x", "y"};
  d.agents = {"a1", "a2", "a3"};
  d.observations.push_back(obs({"a1", "a2"}, {{"a1", sv({"0.3", "0.7"})},
                                              {"a2", sv({"0.6", "0.4"})}}));
  d.observations.push_back(obs({"a1", "a3"}, {{"a1", sv({"0.5", "0.5"})},
                                              {"a3", sv({"0.2", "0.8"})}}));
  d.outcome_space = OutcomeSpace::simplex(2);
  return d;
}

Dataset ulm_pair() {
  Dataset d;
  d.alternatives = {"x", "y"};
  d.agents = {"a1", "a2"};
  d.observations.push_back(obs({"a1", "a2"}, {{"a1", sv({"2/3", "1/3"})},
                                              {"a2", sv({"1/3", "2/3"})}}));
  d.outcome_space = OutcomeSpace::simplex(2);
  return d;
}

Dataset ulm_triple() {
  Dataset d;
  d.alternatives = {"x", "y", "z"};
  d.agents = {"a1", "a2", "a3"};
  d.observations.push_back(obs({"a1", "a2"}, {{"a1", sv({"2/3", "1/3", "0"})},
                                              {"a2", sv({"1/3", "2/3", "0"})}}));
  d.observations.push_back(obs({"a1", "a3"}, {{"a1", sv({"2/3", "0", "1/3"})},
                                              {"a3", sv({"1/3", "0", "2/3"})}}));
  d.observations.push_back(obs({"a2", "a3"}, {{"a2", sv({"0", "2/3", "1/3"})},
                                              {"a3", sv({"0", "1/3", "2/3"})}}));
  d.outcome_space = OutcomeSpace::simplex(3);
  return d;
}

}  // namespace lim::fixtures
