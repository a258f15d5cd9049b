// lim: command-line front end. Talks to the library exclusively through the
// C API in lim/lim.h; the only work done here is argument handling and I/O.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lim/lim.h"

namespace {

int usage_error(const std::string& msg) {
  std::cerr << "lim: " << msg << "\n";
  return 2;
}

bool read_file(const std::string& path, std::string& out, std::string& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err = "cannot open '" + path + "'";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct DatasetHandle {
  lim_dataset* d = nullptr;
  ~DatasetHandle() { lim_dataset_free(d); }
};

struct CString {
  char* s = nullptr;
  ~CString() { lim_string_free(s); }
};

int load_dataset(const std::string& path, DatasetHandle& handle, std::string& raw) {
  std::string err;
  if (!read_file(path, raw, err)) return usage_error(err);
  CString parse_err;
  lim_status st = lim_dataset_parse(raw.c_str(), raw.size(), &handle.d, &parse_err.s);
  if (st != LIM_OK)
    return usage_error(parse_err.s ? parse_err.s : "dataset parse failed");
  return -1;  // loaded
}

// Prints the report to stdout and maps the status to the process exit code.
int emit(lim_status st, const CString& report) {
  if (report.s) std::cout << report.s;
  if (st == LIM_OK) return 0;
  if (st == LIM_INCONSISTENT) return 1;
  if (report.s) {
    try {
      auto doc = nlohmann::json::parse(report.s);
      if (doc.contains("error"))
        std::cerr << "lim: " << doc["error"]["message"].get<std::string>() << "\n";
    } catch (...) {
    }
  }
  return 2;
}

int env_jobs() {
  if (const char* env = std::getenv("LIM_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revealed-preference tests and identification for linear-in-means choice data"};
  app.require_subcommand(1);

  bool float_mode = false;
  int jobs = env_jobs();
  app.add_flag("--float", float_mode, "floating-point backend with 1e-9 comparisons");
  app.add_option("--jobs", jobs, "parallel per-agent workers (env LIM_JOBS)");

  std::string data_path, model = "glm", what = "ideal", profiles_path, spec_path, groups_path;
  std::string out_path, report_path, cert_data_path, group_csv, oracle_kind;
  std::vector<std::string> agents;
  bool no_certificates = false;
  int grid_k = 30, grid_m = 30;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "check dataset invariants");
  validate->add_option("file", data_path)->required();

  auto* test = app.add_subcommand("test", "test consistency with a choice model");
  test->add_option("--model", model, "glm | glm-star | llm | ulm | ulm-shock");
  test->add_option("--agent", agents, "restrict to specific agents (repeatable)");
  test->add_flag("--no-certificates", no_certificates, "skip money-pump extraction");
  test->add_option("file", data_path)->required();

  auto* identify = app.add_subcommand("identify", "identify ideal points, influence, or weights");
  identify->add_option("--agent", agents, "agents to identify (default: all)");
  identify->add_option("--what", what, "ideal | influence | luce")->required();
  identify->add_option("--model", model, "glm | glm-star");
  identify->add_option("file", data_path)->required();

  auto* predict = app.add_subcommand("predict", "predict choices for a group from profiles");
  predict->add_option("--profiles", profiles_path)->required();
  predict->add_option("--group", group_csv, "comma-separated member labels")->required();

  auto* simulate = app.add_subcommand("simulate", "generate equilibrium data from a network spec");
  simulate->add_option("--spec", spec_path)->required();
  simulate->add_option("--groups", groups_path)->required();
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--out", out_path, "write the ground truth JSON here");

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks on small instances");
  oracle->add_option("kind", oracle_kind, "glm | hull")->required();
  oracle->add_option("--agent", agents, "agents to scan (oracle glm)");
  oracle->add_option("--grid-k", grid_k, "ideal-point grid resolution");
  oracle->add_option("--grid-m", grid_m, "weight grid resolution");
  oracle->add_option("file", data_path)->required();

  auto* verify = app.add_subcommand("verify-cert", "re-check a report's witnesses/certificates");
  verify->add_option("report", report_path)->required();
  verify->add_option("--data", cert_data_path, "dataset path (default: from the report)");

  CLI11_PARSE(app, argc, argv);

  nlohmann::json options;
  options["float"] = float_mode;
  options["jobs"] = jobs;
  options["dataset_name"] = data_path;

  if (validate->parsed()) {
    DatasetHandle d;
    std::string raw;
    if (int rc = load_dataset(data_path, d, raw); rc >= 0) return rc;
    CString report;
    lim_status st = lim_dataset_validate(d.d, &report.s);
    if (report.s) std::cout << report.s;
    return st == LIM_OK ? 0 : 2;
  }

  if (test->parsed()) {
    DatasetHandle d;
    std::string raw;
    if (int rc = load_dataset(data_path, d, raw); rc >= 0) return rc;
    options["model"] = model;
    options["certificates"] = !no_certificates;
    if (!agents.empty()) options["agents"] = agents;
    CString report;
    return emit(lim_test(d.d, options.dump().c_str(), &report.s), report);
  }

  if (identify->parsed()) {
    DatasetHandle d;
    std::string raw;
    if (int rc = load_dataset(data_path, d, raw); rc >= 0) return rc;
    options["model"] = model == "llm" ? "glm" : model;
    options["what"] = what;
    if (!agents.empty()) options["agents"] = agents;
    CString report;
    return emit(lim_identify(d.d, options.dump().c_str(), &report.s), report);
  }

  if (predict->parsed()) {
    std::string profiles, err;
    if (!read_file(profiles_path, profiles, err)) return usage_error(err);
    std::vector<std::string> members;
    std::stringstream ss(group_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) members.push_back(tok);
    if (members.empty()) return usage_error("empty --group");
    options["group"] = members;
    options.erase("dataset_name");
    CString report;
    return emit(lim_predict(profiles.c_str(), options.dump().c_str(), &report.s), report);
  }

  if (simulate->parsed()) {
    std::string spec, plan, err;
    if (!read_file(spec_path, spec, err)) return usage_error(err);
    if (!read_file(groups_path, plan, err)) return usage_error(err);
    options.erase("dataset_name");
    CString report, gt;
    lim_status st =
        lim_simulate(spec.c_str(), plan.c_str(), seed, options.dump().c_str(), &report.s, &gt.s);
    if (st == LIM_OK && !out_path.empty() && gt.s) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) return usage_error("cannot write '" + out_path + "'");
      out << gt.s;
    }
    return emit(st, report);
  }

  if (oracle->parsed()) {
    if (oracle_kind == "glm") {
      DatasetHandle d;
      std::string raw;
      if (int rc = load_dataset(data_path, d, raw); rc >= 0) return rc;
      options["grid_k"] = grid_k;
      options["grid_m"] = grid_m;
      if (!agents.empty()) options["agents"] = agents;
      CString report;
      return emit(lim_oracle_glm(d.d, options.dump().c_str(), &report.s), report);
    }
    if (oracle_kind == "hull") {
      std::string query, err;
      if (!read_file(data_path, query, err)) return usage_error(err);
      options.erase("dataset_name");
      CString report;
      return emit(lim_oracle_hull(query.c_str(), options.dump().c_str(), &report.s), report);
    }
    return usage_error("oracle kind must be 'glm' or 'hull'");
  }

  if (verify->parsed()) {
    std::string report_text, err;
    if (!read_file(report_path, report_text, err)) return usage_error(err);
    std::string dataset_path = cert_data_path;
    if (dataset_path.empty()) {
      try {
        auto doc = nlohmann::json::parse(report_text);
        for (auto it = doc.at("inputs").begin(); it != doc.at("inputs").end(); ++it) {
          dataset_path = it.key();
          break;
        }
      } catch (...) {
      }
    }
    if (dataset_path.empty())
      return usage_error("cannot determine the dataset path; pass --data");
    std::string dataset_text;
    if (!read_file(dataset_path, dataset_text, err)) return usage_error(err);
    CString verdict;
    return emit(lim_verify_report(report_text.c_str(), dataset_text.c_str(), &verdict.s), verdict);
  }

  return usage_error("no subcommand");
}
