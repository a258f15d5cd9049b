#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "geometry.hpp"

namespace lim {

enum class Model { Glm, GlmStar, Llm };

const char* model_name(Model m);

// A rationalization: one ideal point plus per-group influence rows, and for
// the Luce variant the group-invariant weight vector (normalized to 1 on the
// agent itself).
template <class T>
struct Witness {
  Vec<T> v;
  std::map<std::string, std::map<std::string, T>> rows;  // group key -> member -> weight
  std::map<std::string, T> w;
  bool has_w = false;
};

// A money pump: per-group payout vectors over the alternatives.
template <class T>
struct Bet {
  std::map<std::string, Vec<T>> per_group;
};

template <class T>
struct Certificate {
  Bet<T> bet;
  T margin{};  // the optimized strictness margin, positive iff the pump is real
};

template <class T>
struct ConsistencyVerdict {
  std::string agent;
  Model model = Model::Glm;
  bool consistent = false;
  std::optional<Witness<T>> witness;
  std::optional<Certificate<T>> certificate;
  // Set when the outcome space is not the simplex: the verdict stands but no
  // dual certificate is defined there.
  bool certificate_unsupported = false;
};

struct ConsistencyOptions {
  bool want_certificate = true;
};

// Groups where the agent's row lies outside the convex hull of the peers'
// rows (decided by LP); the groups that carry testable content for the
// zero-self-weight relaxation.
template <class T>
bool in_peers_hull(const Dataset& d, int obs_index, const std::string& agent);
template <class T>
std::vector<int> ext_groups(const Dataset& d, const std::string& agent);

template <class T>
ConsistencyVerdict<T> test_glm(const Dataset& d, const std::string& agent,
                               const OutcomeSpace* outcome = nullptr,
                               const ConsistencyOptions& opt = {});

template <class T>
ConsistencyVerdict<T> test_glm_star(const Dataset& d, const std::string& agent,
                                    const ConsistencyOptions& opt = {});

template <class T>
ConsistencyVerdict<T> test_llm(const Dataset& d, const std::string& agent,
                               const ConsistencyOptions& opt = {});

// Two-alternative fast path via first-coordinate order statistics.
template <class T>
struct OneDimVerdict {
  bool consistent = false;
  T lo{}, hi{};             // sharp interval for the first coordinate
  int violated_condition = 0;
};

template <class T>
OneDimVerdict<T> test_glm_1d(const Dataset& d, const std::string& agent, Model variant);

// Balanced-trade search over the enumerated extreme points of the agent's
// cones; true iff no profitable balanced scheme exists. Equals GLM
// consistency by duality, which the test suite asserts.
template <class T>
bool samet_no_trade_check(const Dataset& d, const std::string& agent, int vertex_cap = 10000);

// The margin program behind the dual certificates, exposed so property tests
// can confirm that the margin is zero exactly on consistent data.
template <class T>
Certificate<T> solve_money_pump(const Dataset& d, const std::string& agent, Model model);

// Independent arithmetic re-checks (no solver involvement).
template <class T>
bool verify_witness(const Dataset& d, const std::string& agent, Model model,
                    const Witness<T>& w, std::string* why = nullptr,
                    const OutcomeSpace* outcome = nullptr);
template <class T>
bool verify_money_pump(const Dataset& d, const std::string& agent, Model model, const Bet<T>& bet,
                       T* margin = nullptr, std::string* why = nullptr);

// Canonical influence row induced by a fixed ideal point: lexicographically
// first basic combination of the cone generators.
template <class T>
std::map<std::string, T> eq1_row_from_ideal(const Dataset& d, int obs_index,
                                            const std::string& agent, const Vec<T>& v);

#define LIM_CONSISTENCY_DECL(T)                                                                  \
  extern template bool in_peers_hull<T>(const Dataset&, int, const std::string&);                \
  extern template std::vector<int> ext_groups<T>(const Dataset&, const std::string&);            \
  extern template ConsistencyVerdict<T> test_glm<T>(const Dataset&, const std::string&,          \
                                                    const OutcomeSpace*,                         \
                                                    const ConsistencyOptions&);                  \
  extern template ConsistencyVerdict<T> test_glm_star<T>(const Dataset&, const std::string&,     \
                                                         const ConsistencyOptions&);             \
  extern template ConsistencyVerdict<T> test_llm<T>(const Dataset&, const std::string&,          \
                                                    const ConsistencyOptions&);                  \
  extern template OneDimVerdict<T> test_glm_1d<T>(const Dataset&, const std::string&, Model);    \
  extern template bool samet_no_trade_check<T>(const Dataset&, const std::string&, int);         \
  extern template Certificate<T> solve_money_pump<T>(const Dataset&, const std::string&, Model); \
  extern template bool verify_witness<T>(const Dataset&, const std::string&, Model,              \
                                         const Witness<T>&, std::string*, const OutcomeSpace*);  \
  extern template bool verify_money_pump<T>(const Dataset&, const std::string&, Model,           \
                                            const Bet<T>&, T*, std::string*);                    \
  extern template std::map<std::string, T> eq1_row_from_ideal<T>(const Dataset&, int,            \
                                                                 const std::string&, const Vec<T>&);

LIM_CONSISTENCY_DECL(Rational)
LIM_CONSISTENCY_DECL(FloatNum)
#undef LIM_CONSISTENCY_DECL

}  // namespace lim
