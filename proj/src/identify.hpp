#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "consistency.hpp"
#include "dataset.hpp"
#include "geometry.hpp"

namespace lim {

// The sharp identified set for the agent's ideal point: the (lifted)
// intersection of the feasible cones, over all of the agent's groups for the
// general model or only the testable ones for the zero-self-weight variant.
// Throws InconsistentData when no rationalization exists.
template <class T>
Polytope<T> sharp_set(const Dataset& d, const std::string& agent, Model model,
                      const OutcomeSpace* outcome = nullptr);

template <class T>
struct IdealIdentification {
  bool point = false;
  Vec<T> value;  // the identified point, or a relative-interior witness
  int dimension = 0;
  std::optional<Mat<T>> vertices;  // omitted when enumeration exceeds capacity
};

template <class T>
IdealIdentification<T> point_identify_ideal(const Dataset& d, const std::string& agent,
                                            Model model, const OutcomeSpace* outcome = nullptr,
                                            int vertex_cap = 10000);

enum class RecoveryKind { Unique, NonUnique, Infeasible };

template <class T>
struct InfluenceRecovery {
  RecoveryKind kind = RecoveryKind::Infeasible;
  std::map<std::string, T> row;  // member -> weight, self included
};

// Influence weights from a known ideal point and one group's choices.
// Affinely independent configurations give the unique row; dependent but
// feasible ones give the lexicographically-first basic witness.
template <class T>
InfluenceRecovery<T> recover_influence(const Vec<T>& ideal,
                                       const std::map<std::string, Vec<T>>& choices,
                                       const std::string& agent, Model mode);

template <class T>
struct LuceRecovery {
  bool complete = false;
  std::map<std::string, T> w;  // identified weights, normalized to w[agent] = 1
  std::vector<std::string> missing;
  // Comparability structure: per identified agent, the qualifying groups
  // (affinely independent configurations) that pinned its ratio.
  std::map<std::string, std::vector<std::string>> qualifying_groups;
};

template <class T>
LuceRecovery<T> recover_luce_weights(const Dataset& d, const std::string& agent,
                                     const Vec<T>& ideal);

template <class T>
struct LuceProfile {
  std::string agent;
  Vec<T> v;
  std::map<std::string, T> w;  // w[agent] normalized to 1
};

// Joint equilibrium prediction for an arbitrary group from Luce profiles.
// The per-alternative system is strictly diagonally dominant, so the
// solution exists and is unique; rows are asserted to land in the simplex.
template <class T>
std::map<std::string, Vec<T>> predict_group(const std::map<std::string, LuceProfile<T>>& profiles,
                                            const std::vector<std::string>& group);

// True iff the quadratic-loss gradient of every member, projected on the
// sum-zero tangent space, vanishes; equivalently each row solves the
// fixed-point equation. The float backend additionally cross-checks the
// analytic tangent gradient against central finite differences.
template <class T>
bool verify_equilibrium(const std::map<std::string, Vec<T>>& choices,
                        const std::map<std::string, std::map<std::string, T>>& rows,
                        const std::map<std::string, Vec<T>>& ideals);

#define LIM_IDENTIFY_DECL(T)                                                                   \
  extern template Polytope<T> sharp_set<T>(const Dataset&, const std::string&, Model,          \
                                           const OutcomeSpace*);                               \
  extern template IdealIdentification<T> point_identify_ideal<T>(                              \
      const Dataset&, const std::string&, Model, const OutcomeSpace*, int);                    \
  extern template InfluenceRecovery<T> recover_influence<T>(                                   \
      const Vec<T>&, const std::map<std::string, Vec<T>>&, const std::string&, Model);         \
  extern template LuceRecovery<T> recover_luce_weights<T>(const Dataset&, const std::string&,  \
                                                          const Vec<T>&);                      \
  extern template std::map<std::string, Vec<T>> predict_group<T>(                              \
      const std::map<std::string, LuceProfile<T>>&, const std::vector<std::string>&);          \
  extern template bool verify_equilibrium<T>(                                                  \
      const std::map<std::string, Vec<T>>&,                                                    \
      const std::map<std::string, std::map<std::string, T>>&,                                  \
      const std::map<std::string, Vec<T>>&);

LIM_IDENTIFY_DECL(Rational)
LIM_IDENTIFY_DECL(FloatNum)
#undef LIM_IDENTIFY_DECL

}  // namespace lim
