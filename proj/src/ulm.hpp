#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dataset.hpp"

namespace lim {

// Pairwise peer effect inside one group: delta = p_from - p_to, scaled by
// (1 + |N|) for the size-corrected axioms.
template <class T>
struct PeerEffect {
  std::string group;
  std::string from_agent, to_agent;
  Vec<T> delta;
  Vec<T> scaled;
};

template <class T>
PeerEffect<T> peer_effect(const Dataset& d, int obs_index, const std::string& from,
                          const std::string& to);

struct EdgeRef {
  std::string group;
  std::string from, to;
};

template <class T>
struct CyclicResult {
  bool pass = false;
  // Potentials per agent with the component root pinned at zero; every edge
  // label equals the potential difference, which is path independence.
  std::map<std::string, Vec<T>> potentials;
  std::optional<EdgeRef> violation;
};

template <class T>
struct SymmetryViolation {
  std::string group_n, group_m;
  std::string agent;
  Vec<T> residual;
};

template <class T>
struct SymmetryResult {
  bool pass = false;
  std::optional<SymmetryViolation<T>> violation;
};

struct BoundedViolation {
  std::string group;
  std::string agent;
  int coordinate = 0;
};

struct BoundedResult {
  bool pass = false;
  std::optional<BoundedViolation> violation;
};

template <class T>
struct VhatMismatch {
  std::string agent;
  std::string group_a, group_b;  // two groups with different implied ideals
  bool outside_simplex = false;  // or: the common value leaves the simplex
};

template <class T>
struct UlmVerdict {
  bool consistent = false;
  bool starred = false;  // size-corrected axioms were used for the diagnosis
  std::map<std::string, Vec<T>> ideals;
  std::vector<std::string> failed_axioms;
  std::optional<VhatMismatch<T>> mismatch;
};

template <class T>
struct ShockDecomposition {
  std::map<std::string, Vec<T>> ideals;  // sum to 1, entries may be negative
  std::map<std::string, Vec<T>> shocks;  // per group key, sum to 0
  std::vector<std::vector<std::string>> components;
};

template <class T>
struct ShockResult {
  std::optional<ShockDecomposition<T>> decomposition;
  std::optional<EdgeRef> violation;
};

// Path-independence of (scaled) peer effects, decided by BFS potential
// assignment plus full edge verification. Unstarred refuses mixed sizes.
template <class T>
CyclicResult<T> check_cyclic_constancy(const Dataset& d, bool starred);

template <class T>
SymmetryResult<T> check_symmetric_peer_effects(const Dataset& d, bool starred);

template <class T>
BoundedResult check_bounded_total(const Dataset& d);

// Group-invariance of |N| p_i - sum of peers, the identification identity.
// On failure the axiom checks run (size-corrected when sizes vary) and the
// failing ones are reported.
template <class T>
UlmVerdict<T> test_ulm(const Dataset& d);

// Uniform-weights representation with per-group common taste shocks; exists
// iff size-corrected cyclic constancy holds. Ideals are anchored at the
// uniform vector on the lexicographically-first agent of each component.
template <class T>
ShockResult<T> decompose_with_shocks(const Dataset& d);

// Implied ideal |N| p_i - sum_{j != i} p_j for one observation.
template <class T>
Vec<T> ulm_implied_ideal(const Dataset& d, int obs_index, const std::string& agent);

#define LIM_ULM_DECL(T)                                                             \
  extern template PeerEffect<T> peer_effect<T>(const Dataset&, int, const std::string&, \
                                               const std::string&);                 \
  extern template CyclicResult<T> check_cyclic_constancy<T>(const Dataset&, bool);  \
  extern template SymmetryResult<T> check_symmetric_peer_effects<T>(const Dataset&, bool); \
  extern template BoundedResult check_bounded_total<T>(const Dataset&);             \
  extern template UlmVerdict<T> test_ulm<T>(const Dataset&);                        \
  extern template ShockResult<T> decompose_with_shocks<T>(const Dataset&);          \
  extern template Vec<T> ulm_implied_ideal<T>(const Dataset&, int, const std::string&);

LIM_ULM_DECL(Rational)
LIM_ULM_DECL(FloatNum)
#undef LIM_ULM_DECL

}  // namespace lim
