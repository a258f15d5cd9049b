/*
 * lim: testing and identification for group-varying stochastic choice under
 * linear-in-means behavior.
 *
 * All functions return a status code. Out-parameters of type char** receive
 * malloc'd NUL-terminated JSON documents; release them with lim_string_free.
 * Datasets are opaque handles parsed once and reused across calls.
 */
#ifndef LIM_H
#define LIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lim_status {
  LIM_OK = 0,
  LIM_INCONSISTENT = 1, /* the run finished; some tested agent has no rationalization */
  LIM_E_SCHEMA = 10,
  LIM_E_NUMBER = 11,
  LIM_E_UNKNOWN_AGENT = 12,
  LIM_E_UNKNOWN_GROUP = 13,
  LIM_E_DIMENSION = 14,
  LIM_E_CAPACITY = 15,
  LIM_E_SIZE = 16,
  LIM_E_SINGULAR_SPEC = 17,
  LIM_E_MISSING_PROFILE = 18,
  LIM_E_INCONSISTENT_DATA = 19,
  LIM_E_USAGE = 20,
  LIM_E_INTERNAL = 99
} lim_status;

typedef struct lim_dataset lim_dataset;

const char* lim_version(void);
void lim_string_free(char* s);

/* Parses and retains a choice dataset. On failure *error (when non-NULL)
 * receives a message. */
lim_status lim_dataset_parse(const char* json, size_t len, lim_dataset** out, char** error);
void lim_dataset_free(lim_dataset* d);

/* Structural diagnostics; *report carries the document, status is LIM_OK when
 * the dataset is valid and LIM_E_SCHEMA otherwise. */
lim_status lim_dataset_validate(const lim_dataset* d, char** report);
lim_status lim_dataset_serialize(const lim_dataset* d, char** json);

/* options_json (every field optional):
 *   {"model": "glm"|"glm-star"|"llm"|"ulm"|"ulm-shock",
 *    "agents": ["Ann", ...],
 *    "certificates": true,
 *    "float": false,
 *    "jobs": 1,
 *    "what": "ideal"|"influence"|"luce",
 *    "grid_k": 30, "grid_m": 30,
 *    "group": ["Ann","Ben"],
 *    "dataset_name": "path/shown/in/report.json"}
 */
lim_status lim_test(const lim_dataset* d, const char* options_json, char** report);
lim_status lim_identify(const lim_dataset* d, const char* options_json, char** report);
lim_status lim_predict(const char* profiles_json, const char* options_json, char** report);
lim_status lim_simulate(const char* spec_json, const char* plan_json, uint64_t seed,
                        const char* options_json, char** report, char** ground_truth);
lim_status lim_oracle_glm(const lim_dataset* d, const char* options_json, char** report);
lim_status lim_oracle_hull(const char* query_json, const char* options_json, char** report);

/* Re-checks every witness and certificate in a report against the dataset by
 * direct arithmetic. LIM_OK when everything verifies, LIM_INCONSISTENT when
 * some record fails. */
lim_status lim_verify_report(const char* report_json, const char* dataset_json, char** verdict);

#ifdef __cplusplus
}
#endif

#endif /* LIM_H */
