#pragma once

// Seeded corpus of small simulated datasets: clean equilibria from all seven
// generators, adversarial mass-shift perturbations, and group-shock
// injections. Everything dyadic / grid-representable so exact arithmetic and
// grid oracles stay meaningful.

#include <optional>
#include <string>
#include <vector>

#include "simulate.hpp"

namespace lim::test {

struct CorpusItem {
  std::string name;
  SpecKind kind = SpecKind::Uniform;
  Dataset dataset;
  std::optional<GroundTruth> truth;  // present iff the item is an untouched equilibrium
  bool perturbed = false;
  bool shock_injected = false;
};

// count items, deterministic in seed. Instances stay within 5 agents, 4
// alternatives, 6 groups of size at most 3.
std::vector<CorpusItem> make_corpus(int count, std::uint64_t seed);

// Luce instances engineered for exact round-trip identification: all-pairs
// group structure, point-identified ideals, affinely independent
// configurations in every group. Retries draws until the checks hold.
std::vector<CorpusItem> make_identifiable_corpus(int count, std::uint64_t seed);

// General-model instances whose rows and ideals lie on the 1/16 grids, so the
// grid oracle must find every consistent agent.
std::vector<CorpusItem> make_grid_corpus(int count, std::uint64_t seed);

}  // namespace lim::test
