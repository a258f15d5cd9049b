#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dataset.hpp"

namespace lim {

enum class SpecKind {
  Uniform,
  Luce,
  Club,
  Friendship,
  RandomParticipation,
  RandomArrival,
  General,
};

const char* spec_kind_name(SpecKind k);

// Generative network model: how the influence rows of a group are produced.
struct InfluenceSpec {
  SpecKind kind = SpecKind::Uniform;

  // luce & random_participation: per-agent invariant weights, w[i][i] > 0
  std::map<std::string, std::map<std::string, Rational>> w;

  // club: disjoint clubs covering the agents, per-agent club affinities
  std::vector<std::vector<std::string>> partition;
  std::map<std::string, std::vector<Rational>> club_alpha;  // by club index

  // friendship: per-agent ranking of the others (best first), own-ideal
  // weight in (0,1), and weights by (ranked agent, rank position)
  std::map<std::string, std::vector<std::string>> rank;
  std::map<std::string, Rational> alpha_self;
  std::map<std::string, std::vector<Rational>> rank_weight;  // [agent][position-1]

  // random_participation: attendance probabilities in (0,1)
  std::map<std::string, Rational> gamma;

  // random_arrival: probability mixture of fixed weight profiles
  struct Arrangement {
    Rational prob;
    std::map<std::string, Rational> weights;
  };
  std::vector<Arrangement> arrangements;

  // general: explicit rows per group key
  std::map<std::string, std::map<std::string, std::map<std::string, Rational>>> pi;
};

InfluenceSpec parse_influence_spec(const std::string& json_text);
std::string serialize_influence_spec(const InfluenceSpec& spec, int indent = -1);

using InfluenceRows = std::map<std::string, std::map<std::string, Rational>>;

// Exact influence rows for one group under the spec. Rows are row-stochastic
// with positive self-weight for every kind except an explicit general table,
// which may carry zero self-weights (rejected later by the equilibrium solve).
InfluenceRows build_influence(const InfluenceSpec& spec, const std::vector<std::string>& group);

// Unique solution of the fixed-point system p_i = pi_i(i) v_i + sum_j
// pi_i(j) p_j (strict diagonal dominance); rows are verified to land in the
// simplex and to pass the equilibrium check.
std::map<std::string, Vec<Rational>> solve_equilibrium(
    const InfluenceRows& rows, const std::map<std::string, Vec<Rational>>& ideals);

struct GroundTruth {
  Dataset dataset;
  std::map<std::string, SimplexVector> ideals;
  std::map<std::string, InfluenceRows> rows;  // group key -> agent -> row
};

struct SimPlan {
  std::vector<std::string> alternatives;
  std::vector<std::string> agents;
  std::vector<std::vector<std::string>> groups;
  std::map<std::string, SimplexVector> ideals;  // empty entries drawn from the seed
};

SimPlan parse_sim_plan(const std::string& json_text);

// Deterministic in (spec, plan, seed). Missing ideals or missing spec
// parameters are drawn as dyadic rationals from a fixed 64-bit generator so
// downstream arithmetic stays exact.
GroundTruth generate_dataset(InfluenceSpec spec, SimPlan plan, std::uint64_t seed);

std::string serialize_ground_truth(const GroundTruth& gt, int indent = -1);

// Deterministic dyadic randomness helper shared with the test corpora.
class Prng {
public:
  explicit Prng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int uniform_int(int lo, int hi);               // inclusive bounds
  Rational dyadic(int bits);                     // in [0, 1)
  Rational dyadic_positive(int bits);            // in (0, 1]
  Vec<Rational> grid_simplex(int dim, int resolution);  // coords multiples of 1/resolution

private:
  std::mt19937_64 eng_;
};

}  // namespace lim
