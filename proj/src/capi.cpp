#include "lim/lim.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "json.hpp"

#include "dataset.hpp"
#include "errors.hpp"
#include "report.hpp"

using nlohmann::json;

struct lim_dataset {
  lim::Dataset data;
  std::string raw;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lim_status status_of(const lim::Error& e) {
  switch (e.code()) {
    case lim::ErrorCode::Schema: return LIM_E_SCHEMA;
    case lim::ErrorCode::Number: return LIM_E_NUMBER;
    case lim::ErrorCode::UnknownAgent: return LIM_E_UNKNOWN_AGENT;
    case lim::ErrorCode::UnknownGroup: return LIM_E_UNKNOWN_GROUP;
    case lim::ErrorCode::Dimension: return LIM_E_DIMENSION;
    case lim::ErrorCode::Capacity: return LIM_E_CAPACITY;
    case lim::ErrorCode::Size: return LIM_E_SIZE;
    case lim::ErrorCode::SingularSpec: return LIM_E_SINGULAR_SPEC;
    case lim::ErrorCode::MissingProfile: return LIM_E_MISSING_PROFILE;
    case lim::ErrorCode::InconsistentData: return LIM_E_INCONSISTENT_DATA;
    case lim::ErrorCode::Usage: return LIM_E_USAGE;
    case lim::ErrorCode::Internal: return LIM_E_INTERNAL;
  }
  return LIM_E_INTERNAL;
}

void emit_error(char** out, const lim::Error& e) {
  if (!out) return;
  json doc;
  doc["error"] = {{"code", lim::error_code_name(e.code())}, {"message", e.what()}};
  *out = dup_string(doc.dump(2) + "\n");
}

lim::RunOptions parse_options(const char* options_json, const lim_dataset* d) {
  lim::RunOptions opt;
  std::string dataset_name = "dataset";
  if (options_json && *options_json) {
    json o;
    try {
      o = json::parse(options_json);
    } catch (const json::parse_error& e) {
      throw lim::Error(lim::ErrorCode::Usage, std::string("invalid options JSON: ") + e.what());
    }
    if (o.contains("model")) opt.model = o.at("model").get<std::string>();
    if (o.contains("agents"))
      for (const auto& a : o.at("agents")) opt.agents.push_back(a.get<std::string>());
    if (o.contains("certificates")) opt.certificates = o.at("certificates").get<bool>();
    if (o.contains("float")) opt.float_mode = o.at("float").get<bool>();
    if (o.contains("jobs")) opt.jobs = o.at("jobs").get<int>();
    if (o.contains("what")) opt.what = o.at("what").get<std::string>();
    if (o.contains("grid_k")) opt.grid_k = o.at("grid_k").get<int>();
    if (o.contains("grid_m")) opt.grid_m = o.at("grid_m").get<int>();
    if (o.contains("group"))
      for (const auto& a : o.at("group")) opt.group.push_back(a.get<std::string>());
    if (o.contains("dataset_name")) dataset_name = o.at("dataset_name").get<std::string>();
  }
  if (d) opt.input_contents[dataset_name] = d->raw;
  return opt;
}

template <class Fn>
lim_status guarded(char** report, Fn fn) {
  try {
    lim::RunResult res = fn();
    if (report) *report = dup_string(res.report_json);
    if (res.exit_code == 0) return LIM_OK;
    if (res.exit_code == 1) return LIM_INCONSISTENT;
    return LIM_E_SCHEMA;
  } catch (const lim::Error& e) {
    emit_error(report, e);
    return status_of(e);
  } catch (const std::exception& e) {
    emit_error(report, lim::Error(lim::ErrorCode::Internal, e.what()));
    return LIM_E_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* lim_version(void) { return "1.0.0"; }

void lim_string_free(char* s) { std::free(s); }

lim_status lim_dataset_parse(const char* json_text, size_t len, lim_dataset** out, char** error) {
  if (!json_text || !out) return LIM_E_USAGE;
  try {
    auto* handle = new lim_dataset;
    handle->raw.assign(json_text, len ? len : std::strlen(json_text));
    handle->data = lim::parse_dataset(handle->raw);
    *out = handle;
    return LIM_OK;
  } catch (const lim::Error& e) {
    if (error) *error = dup_string(e.what());
    return status_of(e);
  } catch (const std::exception& e) {
    if (error) *error = dup_string(e.what());
    return LIM_E_INTERNAL;
  }
}

void lim_dataset_free(lim_dataset* d) { delete d; }

lim_status lim_dataset_validate(const lim_dataset* d, char** report) {
  if (!d) return LIM_E_USAGE;
  return guarded(report, [&] {
    auto res = lim::run_validate(d->data, parse_options(nullptr, d));
    return res;
  });
}

lim_status lim_dataset_serialize(const lim_dataset* d, char** json_out) {
  if (!d || !json_out) return LIM_E_USAGE;
  try {
    *json_out = dup_string(lim::serialize_dataset(d->data, 2) + "\n");
    return LIM_OK;
  } catch (const std::exception&) {
    return LIM_E_INTERNAL;
  }
}

lim_status lim_test(const lim_dataset* d, const char* options_json, char** report) {
  if (!d) return LIM_E_USAGE;
  return guarded(report, [&] { return lim::run_test(d->data, parse_options(options_json, d)); });
}

lim_status lim_identify(const lim_dataset* d, const char* options_json, char** report) {
  if (!d) return LIM_E_USAGE;
  return guarded(report,
                 [&] { return lim::run_identify(d->data, parse_options(options_json, d)); });
}

lim_status lim_predict(const char* profiles_json, const char* options_json, char** report) {
  if (!profiles_json) return LIM_E_USAGE;
  return guarded(report, [&] {
    auto opt = parse_options(options_json, nullptr);
    opt.input_contents["profiles"] = profiles_json;
    return lim::run_predict(profiles_json, opt);
  });
}

lim_status lim_simulate(const char* spec_json, const char* plan_json, uint64_t seed,
                        const char* options_json, char** report, char** ground_truth) {
  if (!spec_json || !plan_json) return LIM_E_USAGE;
  return guarded(report, [&] {
    auto opt = parse_options(options_json, nullptr);
    opt.input_contents["spec"] = spec_json;
    opt.input_contents["plan"] = plan_json;
    std::string gt;
    auto res = lim::run_simulate(spec_json, plan_json, seed, opt, &gt);
    if (ground_truth) *ground_truth = dup_string(gt);
    return res;
  });
}

lim_status lim_oracle_glm(const lim_dataset* d, const char* options_json, char** report) {
  if (!d) return LIM_E_USAGE;
  return guarded(report,
                 [&] { return lim::run_oracle_glm(d->data, parse_options(options_json, d)); });
}

lim_status lim_oracle_hull(const char* query_json, const char* options_json, char** report) {
  if (!query_json) return LIM_E_USAGE;
  return guarded(report, [&] {
    auto opt = parse_options(options_json, nullptr);
    opt.input_contents["query"] = query_json;
    return lim::run_oracle_hull(query_json, opt);
  });
}

lim_status lim_verify_report(const char* report_json, const char* dataset_json, char** verdict) {
  if (!report_json || !dataset_json) return LIM_E_USAGE;
  return guarded(verdict,
                 [&] { return lim::run_verify_report(report_json, dataset_json); });
}

}  // extern "C"
