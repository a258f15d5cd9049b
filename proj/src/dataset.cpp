#include "dataset.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "errors.hpp"
#include "lp.hpp"

namespace lim {

using nlohmann::json;

SimplexVector SimplexVector::checked(std::vector<Rational> coords, const std::string& where) {
  Rational sum = 0;
  for (const auto& q : coords) {
    if (sgn(q) < 0)
      throw Error(ErrorCode::Number, where + ": negative probability " + format_number(q));
    sum += q;
  }
  if (sum != 1)
    throw Error(ErrorCode::Number, where + ": row sums to " + format_number(sum) + ", expected 1");
  return SimplexVector{std::move(coords)};
}

OutcomeSpace OutcomeSpace::simplex(int dim) {
  OutcomeSpace y;
  y.kind = Kind::Simplex;
  y.dim = dim;
  return y;
}

OutcomeSpace OutcomeSpace::polytope(int dim, Mat<Rational> a, Vec<Rational> c) {
  OutcomeSpace y;
  y.kind = Kind::Polytope;
  y.dim = dim;
  y.a = std::move(a);
  y.c = std::move(c);
  if (y.a.size() != y.c.size())
    throw Error(ErrorCode::Schema, "outcome_space: A and c row counts differ");
  for (const auto& row : y.a)
    if (static_cast<int>(row.size()) != dim)
      throw Error(ErrorCode::Schema, "outcome_space: A column count does not match dimension");

  LinearProgram<Rational> lp;
  lp.num_vars = dim;
  for (std::size_t k = 0; k < y.a.size(); ++k) lp.add_row(y.a[k], Rel::Le, y.c[k]);
  lp.objective = Vec<Rational>(dim, 0);
  for (int t = 0; t < dim; ++t) {
    (*lp.objective)[t] = 1;
    for (int s : {1, -1}) {
      lp.maximize = s > 0;
      auto out = lp_solve(lp);
      if (out.status == LpStatus::Infeasible)
        throw Error(ErrorCode::Schema, "outcome_space: polytope is empty");
      if (out.status == LpStatus::Unbounded)
        throw Error(ErrorCode::Schema, "outcome_space: polytope is unbounded");
    }
    (*lp.objective)[t] = 0;
  }
  return y;
}

std::vector<std::string> Observation::sorted_members() const {
  auto m = group;
  std::sort(m.begin(), m.end());
  return m;
}

std::string Observation::key() const { return group_key(group); }

std::string group_key(std::vector<std::string> members) {
  std::sort(members.begin(), members.end());
  std::string key;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) key += ',';
    key += members[i];
  }
  return key;
}

bool Dataset::has_agent(const std::string& name) const {
  return std::find(agents.begin(), agents.end(), name) != agents.end();
}

std::vector<int> Dataset::groups_of(const std::string& agent) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < observations.size(); ++i) {
    const auto& g = observations[i].group;
    if (std::find(g.begin(), g.end(), agent) != g.end()) out.push_back(static_cast<int>(i));
  }
  return out;
}

int Dataset::find_group(const std::string& key) const {
  for (std::size_t i = 0; i < observations.size(); ++i)
    if (observations[i].key() == key) return static_cast<int>(i);
  return -1;
}

namespace {

Rational number_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return parse_number(v.get<std::string>());
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_number())
    throw Error(ErrorCode::Schema,
                where + ": use decimal or fraction strings for non-integer numbers");
  throw Error(ErrorCode::Schema, where + ": expected a number string");
}

std::vector<Rational> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw Error(ErrorCode::Schema, where + ": expected an array of numbers");
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(number_from_json(e, where));
  return out;
}

std::vector<std::string> string_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw Error(ErrorCode::Schema, where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw Error(ErrorCode::Schema, where + ": expected strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name))
    throw Error(ErrorCode::Schema, where + ": missing field '" + name + "'");
  return obj.at(name);
}

}  // namespace

Dataset parse_dataset(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
  }

  Dataset d;
  d.alternatives = string_array(field(doc, "alternatives", "dataset"), "alternatives");
  d.agents = string_array(field(doc, "agents", "dataset"), "agents");
  if (d.alternatives.empty()) throw Error(ErrorCode::Schema, "alternatives: must be nonempty");

  const json& obs = field(doc, "observations", "dataset");
  if (!obs.is_array()) throw Error(ErrorCode::Schema, "observations: expected an array");
  for (const auto& o : obs) {
    Observation ob;
    const std::string where = "observation " + std::to_string(d.observations.size());
    ob.group = string_array(field(o, "group", where), where + ".group");
    const json& ch = field(o, "choices", where);
    if (!ch.is_object()) throw Error(ErrorCode::Schema, where + ".choices: expected an object");
    for (auto it = ch.begin(); it != ch.end(); ++it) {
      std::string rowwhere = "group {" + group_key(ob.group) + "} agent " + it.key();
      auto nums = number_array(it.value(), rowwhere);
      if (nums.size() != d.alternatives.size())
        throw Error(ErrorCode::Schema,
                    rowwhere + ": row length " + std::to_string(nums.size()) + " != |alternatives|");
      ob.choices.emplace(it.key(), SimplexVector::checked(std::move(nums), rowwhere));
    }
    d.observations.push_back(std::move(ob));
  }

  if (doc.contains("outcome_space")) {
    const json& y = doc.at("outcome_space");
    std::string kind = field(y, "kind", "outcome_space").get<std::string>();
    if (kind == "simplex") {
      d.outcome_space = OutcomeSpace::simplex(d.dim());
    } else if (kind == "polytope") {
      Mat<Rational> a;
      for (const auto& row : field(y, "A", "outcome_space"))
        a.push_back(number_array(row, "outcome_space.A"));
      Vec<Rational> c = number_array(field(y, "c", "outcome_space"), "outcome_space.c");
      d.outcome_space = OutcomeSpace::polytope(d.dim(), std::move(a), std::move(c));
    } else {
      throw Error(ErrorCode::Schema, "outcome_space.kind: expected 'simplex' or 'polytope'");
    }
  } else {
    d.outcome_space = OutcomeSpace::simplex(d.dim());
  }
  return d;
}

std::string serialize_dataset(const Dataset& d, int indent) {
  json doc;
  doc["alternatives"] = d.alternatives;
  doc["agents"] = d.agents;
  json obs = json::array();
  for (const auto& o : d.observations) {
    json jo;
    jo["group"] = o.group;
    json ch = json::object();
    for (const auto& [agent, row] : o.choices) {
      json nums = json::array();
      for (const auto& q : row.coords) nums.push_back(format_number(q));
      ch[agent] = nums;
    }
    jo["choices"] = ch;
    obs.push_back(jo);
  }
  doc["observations"] = obs;
  if (d.outcome_space.kind == OutcomeSpace::Kind::Polytope) {
    json y;
    y["kind"] = "polytope";
    json a = json::array();
    for (const auto& row : d.outcome_space.a) {
      json jr = json::array();
      for (const auto& q : row) jr.push_back(format_number(q));
      a.push_back(jr);
    }
    y["A"] = a;
    json c = json::array();
    for (const auto& q : d.outcome_space.c) c.push_back(format_number(q));
    y["c"] = c;
    doc["outcome_space"] = y;
  }
  return doc.dump(indent);
}

std::vector<Diagnostic> validate_dataset(const Dataset& d) {
  std::vector<Diagnostic> out;
  auto add = [&](std::string code, std::string where, std::string msg) {
    out.push_back({std::move(code), std::move(where), std::move(msg)});
  };

  std::set<std::string> agent_set(d.agents.begin(), d.agents.end());
  if (agent_set.size() != d.agents.size())
    add("duplicate-agent-label", "agents", "agent labels are not unique");
  std::set<std::string> alt_set(d.alternatives.begin(), d.alternatives.end());
  if (alt_set.size() != d.alternatives.size())
    add("duplicate-alternative-label", "alternatives", "alternative labels are not unique");

  std::set<std::string> seen_groups;
  for (std::size_t i = 0; i < d.observations.size(); ++i) {
    const auto& o = d.observations[i];
    const std::string key = o.key();
    const std::string where = "group {" + key + "}";
    if (o.group.empty()) {
      add("empty-group", where, "group has no members");
      continue;
    }
    std::set<std::string> members(o.group.begin(), o.group.end());
    if (members.size() != o.group.size())
      add("duplicate-member", where, "group lists a member twice");
    if (!seen_groups.insert(key).second) add("duplicate-group", where, "group observed twice");
    for (const auto& m : o.group) {
      if (!agent_set.count(m)) add("unknown-member", where, "member '" + m + "' is not an agent");
      if (!o.choices.count(m)) add("missing-row", where, "no choice row for member '" + m + "'");
    }
    for (const auto& [agent, row] : o.choices) {
      if (!members.count(agent))
        add("extra-row", where, "choice row for non-member '" + agent + "'");
      if (row.coords.size() != d.alternatives.size()) {
        add("row-length", where, "row for '" + agent + "' has wrong length");
        continue;
      }
      Rational sum = 0;
      bool negative = false;
      for (const auto& q : row.coords) {
        if (sgn(q) < 0) negative = true;
        sum += q;
      }
      if (negative) add("row-negative", where, "row for '" + agent + "' has a negative entry");
      if (sum != 1)
        add("row-sum", where,
            "row for '" + agent + "' sums to " + format_number(sum) + ", expected 1");
    }
  }
  if (d.outcome_space.dim != d.dim())
    add("outcome-dim", "outcome_space", "outcome space dimension differs from |alternatives|");
  return out;
}

}  // namespace lim
