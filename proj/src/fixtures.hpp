#pragma once

#include "dataset.hpp"

namespace lim::fixtures {

// Three friends choosing sports across two semesters of group variation.
// Ann's ideal point is pinned to (1/10, 1/10, 4/5) by the two cones.
Dataset abc();

// abc plus a third semester where only Ben and Can are present, generated by
// the Luce equilibrium with ideals (9/10,1/10,0) and (1/10,9/10,0) and flat
// weights. Point-identifies all three agents and their Luce weights.
Dataset abc_three_semesters();

// Two-alternative variant: the identified set for Ann is the interval
// alpha in [0, 7/10] of (alpha, 1-alpha).
Dataset two_sports();

// Two-alternative dataset with no rationalizing ideal point for agent a1
// (it is the weak minimum in one group and the weak maximum in the other).
Dataset two_sports_inconsistent();

// Uniform-weights pair: ideals (1,0) and (0,1) give choices (2/3,1/3), (1/3,2/3).
Dataset ulm_pair();

// Three agents, all pairwise groups, uniform weights with unit-vector ideals.
Dataset ulm_triple();

}  // namespace lim::fixtures
