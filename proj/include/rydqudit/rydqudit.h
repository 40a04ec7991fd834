// Copyright 2026 The rydqudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the rydqudit simulation library.
 *
 * Every object is an opaque handle released with its *_destroy function.
 * Functions return RQ_OK or an error code; rq_last_error() then holds a
 * message for the calling thread. Strings returned by handle accessors stay
 * valid until the handle is destroyed. All functions are reentrant. */
#ifndef RYDQUDIT_H
#define RYDQUDIT_H

#include <stddef.h>

#if defined(RYDQUDIT_BUILDING_LIBRARY)
#define RQ_API __attribute__((visibility("default")))
#else
#define RQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rq_status {
  RQ_OK = 0,
  RQ_ERR_INVALID_ARGUMENT = 1,
  RQ_ERR_CONFIG = 2,
  RQ_ERR_NOT_FOUND = 3,
  RQ_ERR_INTEGRATION = 4,
  RQ_ERR_INTERNAL = 5
} rq_status;

typedef struct rq_manifold rq_manifold;
typedef struct rq_result rq_result;
typedef struct rq_schedule rq_schedule;

RQ_API const char* rq_version(void);
/* Message of the last failed call on this thread ("" if none). */
RQ_API const char* rq_last_error(void);

/* ---- manifold ---- */
RQ_API rq_status rq_manifold_create(int nbar, int d, rq_manifold** out);
RQ_API void rq_manifold_destroy(rq_manifold* m);
/* Kepler, revival and super-revival periods in atomic units. */
RQ_API rq_status rq_manifold_time_scales(const rq_manifold* m, double* t_kepler,
                                         double* t_revival, double* t_superrevival);
/* One-period decay 1 - |b~_0(T_K)|^2 of the k=0 packet, exact spectrum. */
RQ_API rq_status rq_manifold_one_period_decay(const rq_manifold* m, double* out);

/* ---- scenarios ---- */
RQ_API size_t rq_scenario_count(void);
/* Name of registry entry i; NULL when out of range. Static storage. */
RQ_API const char* rq_scenario_name(size_t index);
/* Description text of a built-in scenario; valid until the next call to
 * this function on the same thread. */
RQ_API rq_status rq_scenario_describe(const char* name, const char** text);
RQ_API rq_status rq_scenario_run_builtin(const char* name, unsigned threads, rq_result** out);
/* Runs a JSON scenario document; base_dir resolves relative file references
 * (NULL for the working directory). */
RQ_API rq_status rq_scenario_run_config(const char* json_text, const char* base_dir,
                                        unsigned threads, rq_result** out);

RQ_API void rq_result_destroy(rq_result* r);
/* 1 when every check passed. */
RQ_API int rq_result_passed(const rq_result* r);
RQ_API const char* rq_result_name(const rq_result* r);
RQ_API const char* rq_result_summary_line(const rq_result* r);
RQ_API const char* rq_result_summary_json(const rq_result* r);
RQ_API const char* rq_result_trace_csv(const rq_result* r);
RQ_API size_t rq_result_check_count(const rq_result* r);
/* Check i: name, value, bounds and verdict. */
RQ_API rq_status rq_result_check(const rq_result* r, size_t index, const char** name,
                                 double* value, double* lo, double* hi, int* passed);
RQ_API size_t rq_result_table_count(const rq_result* r);
RQ_API const char* rq_result_table_name(const rq_result* r, size_t index);
RQ_API const char* rq_result_table_csv(const rq_result* r, size_t index);
/* Named scalar observable. */
RQ_API rq_status rq_result_observable(const rq_result* r, const char* key, double* value);

/* ---- compilation and verification ---- */
/* unitary_json: {"dimension", "entries", optional "nbar"}. nbar <= 0 takes the
 * value from the document. options_json may be NULL or an object with
 * "strategy" ("chain" | "fragments"), "tau_p" (unit-tagged time),
 * "align_to_revival" (bool), "detuning" (unit-tagged angular frequency). */
RQ_API rq_status rq_compile_unitary(const char* unitary_json, int nbar, const char* options_json,
                                    rq_schedule** out);
RQ_API rq_status rq_schedule_from_json(const char* schedule_json, rq_schedule** out);
RQ_API void rq_schedule_destroy(rq_schedule* s);
RQ_API const char* rq_schedule_json(const rq_schedule* s);
RQ_API double rq_schedule_duration_au(const rq_schedule* s);
RQ_API size_t rq_schedule_pulse_count(const rq_schedule* s);
/* Process fidelity of the schedule against the unitary. options_json may be
 * NULL or an object with "model" ("full" | "ideal"), "spectrum"
 * ("exact" | "taylor1" | "taylor2" | "taylor3"), "threads" (integer). */
RQ_API rq_status rq_verify(const rq_schedule* s, const char* unitary_json,
                           const char* options_json, double* fidelity);

#ifdef __cplusplus
}
#endif

#endif /* RYDQUDIT_H */
