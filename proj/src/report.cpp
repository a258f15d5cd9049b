#include "report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <set>
#include <thread>

#include "json.hpp"

#include "consistency.hpp"
#include "errors.hpp"
#include "identify.hpp"
#include "oracle.hpp"
#include "simulate.hpp"
#include "ulm.hpp"

namespace lim {

using nlohmann::json;

namespace {

template <class Fn>
void parallel_for(int n, int jobs, Fn fn) {
  jobs = std::max(1, std::min(jobs, n));
  std::vector<std::exception_ptr> errors(n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (int i; (i = next.fetch_add(1)) < n;) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
  }
  for (int i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
}

template <class T>
json num_json(const T& x) {
  if constexpr (std::is_same_v<T, Rational>)
    return format_number(x);
  else
    return x.v;
}

template <class T>
json vec_json(const Vec<T>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(num_json(x));
  return arr;
}

template <class T>
json map_json(const std::map<std::string, T>& m) {
  json o = json::object();
  for (const auto& [k, v] : m) o[k] = num_json(v);
  return o;
}

template <class T>
T num_from_json(const json& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (v.is_string()) return parse_number(v.get<std::string>());
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
    throw Error(ErrorCode::Schema, "expected an exact number string in the report");
  } else {
    if (v.is_number()) return FloatNum{v.get<double>()};
    if (v.is_string()) return FloatNum{parse_number(v.get<std::string>()).get_d()};
    throw Error(ErrorCode::Schema, "expected a number in the report");
  }
}

template <class T>
Vec<T> vec_from_json(const json& v) {
  Vec<T> out;
  for (const auto& x : v) out.push_back(num_from_json<T>(x));
  return out;
}

template <class T>
std::map<std::string, T> map_from_json(const json& v) {
  std::map<std::string, T> out;
  for (auto it = v.begin(); it != v.end(); ++it) out[it.key()] = num_from_json<T>(it.value());
  return out;
}

std::vector<std::string> observed_agents(const Dataset& d) {
  std::vector<std::string> out;
  for (const auto& a : d.agents)
    if (!d.groups_of(a).empty()) out.push_back(a);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> select_agents(const Dataset& d, const RunOptions& opt) {
  if (opt.agents.empty()) return observed_agents(d);
  std::vector<std::string> out = opt.agents;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const auto& a : out)
    if (d.groups_of(a).empty())
      throw Error(ErrorCode::UnknownAgent, "agent '" + a + "' is not observed in any group");
  return out;
}

json base_report(const std::string& command, const RunOptions& opt) {
  json doc;
  doc["schema"] = "limreport/1";
  doc["command"] = command;
  json inputs = json::object();
  for (const auto& [name, content] : opt.input_contents) inputs[name] = fnv1a64_hex(content);
  doc["inputs"] = inputs;
  json options;
  options["mode"] = opt.float_mode ? "float" : "exact";
  doc["options"] = options;
  return doc;
}

RunResult finish(json doc, int exit_code,
                 std::chrono::steady_clock::time_point started) {
  doc["exit_code"] = exit_code;
  doc["timing_ms"] = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                           std::chrono::steady_clock::now() - started)
                                           .count());
  return RunResult{doc.dump(2) + "\n", exit_code};
}

Model parse_model(const std::string& name) {
  if (name == "glm") return Model::Glm;
  if (name == "glm-star") return Model::GlmStar;
  if (name == "llm") return Model::Llm;
  throw Error(ErrorCode::Usage, "unknown model '" + name + "'");
}

template <class T>
json witness_json(const Witness<T>& w) {
  json o;
  o["v"] = vec_json(w.v);
  json rows = json::object();
  for (const auto& [group, row] : w.rows) rows[group] = map_json(row);
  o["rows"] = rows;
  if (w.has_w) o["w"] = map_json(w.w);
  return o;
}

template <class T>
json certificate_json(const Certificate<T>& c) {
  json o;
  o["margin"] = num_json(c.margin);
  json bets = json::object();
  for (const auto& [group, b] : c.bet.per_group) bets[group] = vec_json(b);
  o["bets"] = bets;
  return o;
}

template <class T>
json verdict_json(const Dataset& d, const ConsistencyVerdict<T>& v) {
  json o;
  o["agent"] = v.agent;
  o["model"] = model_name(v.model);
  o["consistent"] = v.consistent;
  if (v.witness) {
    o["witness"] = witness_json(*v.witness);
    std::string why;
    if (!verify_witness(d, v.agent, v.model, *v.witness, &why))
      throw Error(ErrorCode::Internal, "emitted witness failed self-check: " + why);
  }
  if (v.certificate) {
    o["certificate"] = certificate_json(*v.certificate);
    std::string why;
    T margin{};
    if (!verify_money_pump(d, v.agent, v.model, v.certificate->bet, &margin, &why))
      throw Error(ErrorCode::Internal, "emitted certificate failed self-check: " + why);
  }
  if (v.certificate_unsupported) o["certificate_unsupported"] = true;
  return o;
}

template <class T>
RunResult run_test_impl(const Dataset& d, const RunOptions& opt,
                        std::chrono::steady_clock::time_point started) {
  json doc = base_report("test", opt);
  doc["options"]["model"] = opt.model;
  doc["options"]["certificates"] = opt.certificates;

  if (opt.model == "ulm") {
    auto verdict = test_ulm<T>(d);
    json ds;
    ds["consistent"] = verdict.consistent;
    ds["size_corrected_axioms"] = verdict.starred;
    if (verdict.consistent) {
      json ideals = json::object();
      for (const auto& [agent, v] : verdict.ideals) ideals[agent] = vec_json(v);
      ds["ideals"] = ideals;
    } else {
      ds["failed_axioms"] = verdict.failed_axioms;
      if (verdict.mismatch) {
        json m;
        m["agent"] = verdict.mismatch->agent;
        if (verdict.mismatch->outside_simplex) {
          m["reason"] = "implied ideal outside the simplex";
          m["group"] = verdict.mismatch->group_a;
        } else {
          m["reason"] = "implied ideal differs across groups";
          m["groups"] = json::array({verdict.mismatch->group_a, verdict.mismatch->group_b});
        }
        ds["diagnosis"] = m;
      }
    }
    doc["dataset"] = ds;
    return finish(std::move(doc), verdict.consistent ? 0 : 1, started);
  }

  if (opt.model == "ulm-shock") {
    auto res = decompose_with_shocks<T>(d);
    json ds;
    ds["decomposed"] = res.decomposition.has_value();
    if (res.decomposition) {
      json ideals = json::object();
      for (const auto& [agent, v] : res.decomposition->ideals) ideals[agent] = vec_json(v);
      ds["ideals"] = ideals;
      json shocks = json::object();
      for (const auto& [group, o] : res.decomposition->shocks) shocks[group] = vec_json(o);
      ds["shocks"] = shocks;
      ds["components"] = res.decomposition->components;
    } else if (res.violation) {
      json v;
      v["group"] = res.violation->group;
      v["agents"] = json::array({res.violation->from, res.violation->to});
      ds["violation"] = v;
    }
    doc["dataset"] = ds;
    return finish(std::move(doc), res.decomposition ? 0 : 1, started);
  }

  Model model = parse_model(opt.model);
  auto agents = select_agents(d, opt);
  ConsistencyOptions copt;
  copt.want_certificate = opt.certificates;

  std::vector<json> records(agents.size());
  std::vector<bool> consistent(agents.size(), false);
  parallel_for(static_cast<int>(agents.size()), opt.jobs, [&](int i) {
    ConsistencyVerdict<T> v;
    switch (model) {
      case Model::Glm: v = test_glm<T>(d, agents[i], nullptr, copt); break;
      case Model::GlmStar: v = test_glm_star<T>(d, agents[i], copt); break;
      case Model::Llm: v = test_llm<T>(d, agents[i], copt); break;
    }
    consistent[i] = v.consistent;
    records[i] = verdict_json(d, v);
  });

  doc["per_agent"] = json(records);
  bool all = std::all_of(consistent.begin(), consistent.end(), [](bool b) { return b; });
  return finish(std::move(doc), all ? 0 : 1, started);
}

template <class T>
RunResult run_identify_impl(const Dataset& d, const RunOptions& opt,
                            std::chrono::steady_clock::time_point started) {
  json doc = base_report("identify", opt);
  doc["options"]["model"] = opt.model;
  doc["options"]["what"] = opt.what;
  Model model = parse_model(opt.model == "llm" ? "glm" : opt.model);
  auto agents = select_agents(d, opt);

  std::vector<json> records(agents.size());
  std::vector<int> codes(agents.size(), 0);
  parallel_for(static_cast<int>(agents.size()), opt.jobs, [&](int i) {
    const std::string& agent = agents[i];
    json rec;
    rec["agent"] = agent;

    if (opt.what == "luce") {
      auto llm = test_llm<T>(d, agent, ConsistencyOptions{opt.certificates});
      if (!llm.consistent) {
        rec["consistent"] = false;
        if (llm.certificate) rec["certificate"] = certificate_json(*llm.certificate);
        codes[i] = 1;
        records[i] = std::move(rec);
        return;
      }
    }

    IdealIdentification<T> ident;
    try {
      ident = point_identify_ideal<T>(d, agent, model);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InconsistentData) throw;
      rec["consistent"] = false;
      auto cert = solve_money_pump<T>(d, agent, model);
      if (NumOps<T>::sign(cert.margin) > 0) rec["certificate"] = certificate_json(cert);
      codes[i] = 1;
      records[i] = std::move(rec);
      return;
    }
    rec["consistent"] = true;
    json id;
    id["point"] = ident.point;
    id["dimension"] = ident.dimension;
    id["value"] = vec_json(ident.value);
    if (ident.vertices) {
      json verts = json::array();
      for (const auto& v : *ident.vertices) verts.push_back(vec_json(v));
      id["vertices"] = verts;
    }
    rec["ideal"] = id;

    if (opt.what == "influence") {
      if (!ident.point) {
        rec["influence"] = {{"status", "ideal-not-point-identified"}};
      } else {
        json per_group = json::object();
        for (int g : d.groups_of(agent)) {
          const Observation& o = d.observations[g];
          std::map<std::string, Vec<T>> choices;
          for (const auto& m : o.sorted_members()) choices[m] = row_as<T>(o, m);
          auto rec_inf = recover_influence<T>(ident.value, choices, agent, model);
          json gi;
          gi["status"] = rec_inf.kind == RecoveryKind::Unique      ? "unique"
                         : rec_inf.kind == RecoveryKind::NonUnique ? "non-unique"
                                                                   : "infeasible";
          if (rec_inf.kind != RecoveryKind::Infeasible) gi["row"] = map_json(rec_inf.row);
          per_group[o.key()] = gi;
        }
        rec["influence"] = per_group;
      }
    } else if (opt.what == "luce") {
      if (!ident.point) {
        rec["luce"] = {{"status", "ideal-not-point-identified"}};
      } else {
        auto luce = recover_luce_weights<T>(d, agent, ident.value);
        json lj;
        lj["status"] = luce.complete ? "complete" : "partial";
        lj["w"] = map_json(luce.w);
        if (!luce.missing.empty()) lj["missing"] = luce.missing;
        json qg = json::object();
        for (const auto& [node, groups] : luce.qualifying_groups) qg[node] = groups;
        lj["qualifying_groups"] = qg;
        rec["luce"] = lj;
      }
    }
    records[i] = std::move(rec);
  });

  doc["per_agent"] = json(records);
  int code = codes.empty() ? 0 : *std::max_element(codes.begin(), codes.end());
  return finish(std::move(doc), code, started);
}

}  // namespace

RunResult run_validate(const Dataset& d, const RunOptions& opt) {
  auto started = std::chrono::steady_clock::now();
  json doc = base_report("validate", opt);
  auto diags = validate_dataset(d);
  json arr = json::array();
  for (const auto& diag : diags) {
    json o;
    o["code"] = diag.code;
    o["where"] = diag.where;
    o["message"] = diag.message;
    arr.push_back(o);
  }
  doc["diagnostics"] = arr;
  doc["valid"] = diags.empty();
  return finish(std::move(doc), diags.empty() ? 0 : 2, started);
}

RunResult run_test(const Dataset& d, const RunOptions& opt) {
  auto started = std::chrono::steady_clock::now();
  return opt.float_mode ? run_test_impl<FloatNum>(d, opt, started)
                        : run_test_impl<Rational>(d, opt, started);
}

RunResult run_identify(const Dataset& d, const RunOptions& opt) {
  auto started = std::chrono::steady_clock::now();
  return opt.float_mode ? run_identify_impl<FloatNum>(d, opt, started)
                        : run_identify_impl<Rational>(d, opt, started);
}

template <class T>
RunResult run_predict_impl(const std::string& profiles_json, const RunOptions& opt,
                           std::chrono::steady_clock::time_point started) {
  json doc = base_report("predict", opt);
  json in;
  try {
    in = json::parse(profiles_json);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
  }
  if (!in.contains("profiles")) throw Error(ErrorCode::Schema, "missing 'profiles'");
  std::map<std::string, LuceProfile<T>> profiles;
  for (auto it = in.at("profiles").begin(); it != in.at("profiles").end(); ++it) {
    LuceProfile<T> p;
    p.agent = it.key();
    p.v = vec_from_json<T>(it.value().at("v"));
    p.w = map_from_json<T>(it.value().at("w"));
    profiles[it.key()] = std::move(p);
  }
  auto prediction = predict_group<T>(profiles, opt.group);
  json out = json::object();
  for (const auto& [agent, row] : prediction) out[agent] = vec_json(row);
  doc["group"] = group_key(opt.group);
  doc["prediction"] = out;
  return finish(std::move(doc), 0, started);
}

RunResult run_predict(const std::string& profiles_json, const RunOptions& opt) {
  auto started = std::chrono::steady_clock::now();
  return opt.float_mode ? run_predict_impl<FloatNum>(profiles_json, opt, started)
                        : run_predict_impl<Rational>(profiles_json, opt, started);
}

RunResult run_simulate(const std::string& spec_json, const std::string& plan_json,
                       std::uint64_t seed, const RunOptions& opt, std::string* ground_truth_json) {
  auto started = std::chrono::steady_clock::now();
  json doc = base_report("simulate", opt);
  InfluenceSpec spec = parse_influence_spec(spec_json);
  SimPlan plan = parse_sim_plan(plan_json);
  GroundTruth gt = generate_dataset(spec, plan, seed);
  std::string gt_json = serialize_ground_truth(gt, 2);
  if (ground_truth_json) *ground_truth_json = gt_json;
  doc["options"]["seed"] = seed;
  doc["options"]["kind"] = spec_kind_name(spec.kind);
  doc["ground_truth"] = json::parse(gt_json);
  return finish(std::move(doc), 0, started);
}

RunResult run_oracle_glm(const Dataset& d, const RunOptions& opt) {
  auto started = std::chrono::steady_clock::now();
  json doc = base_report("oracle", opt);
  doc["options"]["oracle"] = "glm";
  doc["options"]["grid_k"] = opt.grid_k;
  doc["options"]["grid_m"] = opt.grid_m;
  auto agents = select_agents(d, opt);
  json records = json::array();
  for (const auto& agent : agents) {
    GridSpec grid{opt.grid_k, opt.grid_m};
    auto found = grid_glm_oracle(d, agent, grid);
    json rec;
    rec["agent"] = agent;
    rec["found"] = found.has_value();
    if (found) {
      rec["v"] = vec_json(found->ideal);
      json w = json::object();
      for (const auto& [group, row] : found->weights) w[group] = map_json(row);
      rec["weights"] = w;
    }
    records.push_back(rec);
  }
  doc["per_agent"] = records;
  return finish(std::move(doc), 0, started);
}

RunResult run_oracle_hull(const std::string& query_json, const RunOptions& opt) {
  auto started = std::chrono::steady_clock::now();
  json doc = base_report("oracle", opt);
  doc["options"]["oracle"] = "hull";
  json in;
  try {
    in = json::parse(query_json);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
  }
  Vec<Rational> point;
  for (const auto& v : in.at("point")) point.push_back(num_from_json<Rational>(v));
  Mat<Rational> hull;
  for (const auto& row : in.at("hull")) {
    Vec<Rational> p;
    for (const auto& v : row) p.push_back(num_from_json<Rational>(v));
    hull.push_back(std::move(p));
  }
  doc["member"] = hull_membership_oracle(point, hull);
  return finish(std::move(doc), 0, started);
}

namespace {

template <class T>
int verify_records(const Dataset& d, const json& per_agent, json& results) {
  int failures = 0;
  for (const auto& rec : per_agent) {
    if (!rec.contains("agent") || !rec.contains("model")) continue;
    std::string agent = rec.at("agent").get<std::string>();
    Model model = parse_model(rec.at("model").get<std::string>());
    json r;
    r["agent"] = agent;
    r["model"] = rec.at("model");
    bool ok = true;
    std::string why;
    if (rec.contains("witness")) {
      const json& wj = rec.at("witness");
      Witness<T> w;
      w.v = vec_from_json<T>(wj.at("v"));
      for (auto it = wj.at("rows").begin(); it != wj.at("rows").end(); ++it)
        w.rows[it.key()] = map_from_json<T>(it.value());
      if (wj.contains("w")) {
        w.w = map_from_json<T>(wj.at("w"));
        w.has_w = true;
      }
      ok = verify_witness(d, agent, model, w, &why);
      r["checked"] = "witness";
    } else if (rec.contains("certificate")) {
      const json& cj = rec.at("certificate");
      Bet<T> bet;
      for (auto it = cj.at("bets").begin(); it != cj.at("bets").end(); ++it)
        bet.per_group[it.key()] = vec_from_json<T>(it.value());
      T margin{};
      ok = verify_money_pump(d, agent, model, bet, &margin, &why);
      r["checked"] = "certificate";
      if (ok) r["margin"] = num_json(margin);
    } else {
      r["checked"] = "nothing";
    }
    r["ok"] = ok;
    if (!ok) {
      r["reason"] = why;
      ++failures;
    }
    results.push_back(r);
  }
  return failures;
}

}  // namespace

RunResult run_verify_report(const std::string& report_json, const std::string& dataset_json) {
  auto started = std::chrono::steady_clock::now();
  RunOptions opt;
  opt.input_contents["report"] = report_json;
  json doc = base_report("verify-cert", opt);
  json report;
  try {
    report = json::parse(report_json);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("invalid report JSON: ") + e.what());
  }
  if (!report.contains("schema") || report.at("schema") != "limreport/1")
    throw Error(ErrorCode::Schema, "unsupported report schema");
  Dataset d = parse_dataset(dataset_json);

  // The dataset must be the one the report hashed.
  if (report.contains("inputs")) {
    std::string actual = fnv1a64_hex(dataset_json);
    bool matched = false;
    for (auto it = report.at("inputs").begin(); it != report.at("inputs").end(); ++it)
      if (it.value() == actual) matched = true;
    doc["input_hash_matched"] = matched;
  }

  bool float_mode = report.contains("options") && report.at("options").contains("mode") &&
                    report.at("options").at("mode") == "float";
  json results = json::array();
  int failures = 0;
  if (report.contains("per_agent")) {
    failures = float_mode ? verify_records<FloatNum>(d, report.at("per_agent"), results)
                          : verify_records<Rational>(d, report.at("per_agent"), results);
  }
  doc["results"] = results;
  doc["all_verified"] = failures == 0;
  return finish(std::move(doc), failures == 0 ? 0 : 1, started);
}

}  // namespace lim
