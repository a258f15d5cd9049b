#pragma once

#include <map>
#include <string>
#include <vector>

#include "dataset.hpp"

namespace lim {

// Options assembled by the CLI (or any C-API caller) for one batch run.
struct RunOptions {
  std::string model = "glm";  // glm | glm-star | llm | ulm | ulm-shock
  std::vector<std::string> agents;
  bool certificates = true;
  bool float_mode = false;  // epsilon-tolerant double backend
  int jobs = 1;
  std::string what = "ideal";  // identify: ideal | influence | luce
  int grid_k = 30, grid_m = 30;
  std::vector<std::string> group;                     // predict
  std::map<std::string, std::string> input_contents;  // input name -> raw bytes (for hashes)
};

struct RunResult {
  std::string report_json;
  int exit_code = 0;  // 0 consistent/ok, 1 some inconsistency, 2 usage/data error
};

RunResult run_validate(const Dataset& d, const RunOptions& opt);
RunResult run_test(const Dataset& d, const RunOptions& opt);
RunResult run_identify(const Dataset& d, const RunOptions& opt);
RunResult run_predict(const std::string& profiles_json, const RunOptions& opt);
RunResult run_simulate(const std::string& spec_json, const std::string& plan_json,
                       std::uint64_t seed, const RunOptions& opt,
                       std::string* ground_truth_json = nullptr);
RunResult run_oracle_glm(const Dataset& d, const RunOptions& opt);
RunResult run_oracle_hull(const std::string& query_json, const RunOptions& opt);

// Re-checks every witness and certificate embedded in a report by direct
// arithmetic against the dataset the report was computed from.
RunResult run_verify_report(const std::string& report_json, const std::string& dataset_json);

}  // namespace lim
