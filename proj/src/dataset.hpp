#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "numeric.hpp"

namespace lim {

// Probability row over the alternatives: nonnegative, sums to exactly 1.
struct SimplexVector {
  std::vector<Rational> coords;

  bool operator==(const SimplexVector&) const = default;

  // Validates the simplex invariants; `where` names the offending row in errors.
  static SimplexVector checked(std::vector<Rational> coords, const std::string& where);
};

// Where ideal points are allowed to live. Default is the simplex over the
// alternatives; an H-representation polytope {y : A y <= c} is accepted too.
struct OutcomeSpace {
  enum class Kind { Simplex, Polytope };
  Kind kind = Kind::Simplex;
  int dim = 0;
  Mat<Rational> a;
  Vec<Rational> c;

  bool operator==(const OutcomeSpace&) const = default;

  static OutcomeSpace simplex(int dim);
  // Checks nonemptiness and boundedness with the LP kernel.
  static OutcomeSpace polytope(int dim, Mat<Rational> a, Vec<Rational> c);
};

struct Observation {
  std::vector<std::string> group;                // member labels, input order
  std::map<std::string, SimplexVector> choices;  // member -> row

  bool operator==(const Observation&) const = default;

  std::vector<std::string> sorted_members() const;
  std::string key() const;  // sorted members joined with ','
};

struct Dataset {
  std::vector<std::string> alternatives;
  std::vector<std::string> agents;
  std::vector<Observation> observations;
  OutcomeSpace outcome_space;

  bool operator==(const Dataset&) const = default;

  int dim() const { return static_cast<int>(alternatives.size()); }
  bool has_agent(const std::string& name) const;
  // Indices of observations whose group contains the agent.
  std::vector<int> groups_of(const std::string& agent) const;
  int find_group(const std::string& key) const;  // -1 when absent
};

struct Diagnostic {
  std::string code;
  std::string where;
  std::string message;
};

Dataset parse_dataset(const std::string& json_text);
std::string serialize_dataset(const Dataset& d, int indent = -1);
std::vector<Diagnostic> validate_dataset(const Dataset& d);

// Numeric view of a choice row under the selected backend.
template <class T>
Vec<T> row_as(const Observation& o, const std::string& agent) {
  return from_rationals<T>(o.choices.at(agent).coords);
}

std::string group_key(std::vector<std::string> members);

}  // namespace lim
