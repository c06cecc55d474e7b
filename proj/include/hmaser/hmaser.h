// Copyright 2026 The hmaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HMASER_H_
#define HMASER_H_

/* C interface to the hybrid micromaser toolkit. All functions return a
 * status code; on failure hmaser_last_error() describes the cause for the
 * calling thread. Handles are opaque and owned by the caller. */

#include <stddef.h>

#if defined(HMASER_BUILDING_LIBRARY)
#define HMASER_API __attribute__((visibility("default")))
#else
#define HMASER_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hmaser_status {
  HMASER_OK = 0,
  HMASER_ERR_INVALID_ARGUMENT = 1,
  HMASER_ERR_INVALID_DIMENSION = 2,
  HMASER_ERR_NON_FINITE = 3,
  HMASER_ERR_SINGULAR_FUNCTION = 4,
  HMASER_ERR_INVALID_STATE = 5,
  HMASER_ERR_UNDEFINED_STATISTICS = 6,
  HMASER_ERR_DEGENERATE_STEADY_STATE = 7,
  HMASER_ERR_CONVERGENCE = 8,
  HMASER_ERR_TRUNCATION = 9,
  HMASER_ERR_STIFFNESS = 10,
  HMASER_ERR_UNKNOWN_TAG = 11,
  HMASER_ERR_IO = 12,
  HMASER_ERR_BUFFER_TOO_SMALL = 13,
  HMASER_ERR_INTERNAL = 14
} hmaser_status;

typedef enum hmaser_method {
  HMASER_METHOD_DEFAULT = 0,
  HMASER_METHOD_ANALYTIC = 1,
  HMASER_METHOD_NUMERIC = 2,
  HMASER_METHOD_BOTH = 3
} hmaser_method;

typedef enum hmaser_bath { HMASER_BATH_THERMAL = 0, HMASER_BATH_SQUEEZED = 1 } hmaser_bath;

typedef struct hmaser_params hmaser_params;
typedef struct hmaser_sweep hmaser_sweep;
typedef struct hmaser_result hmaser_result;
typedef struct hmaser_report hmaser_report;

/* Shared batch options; zero fields take the library defaults. */
typedef struct hmaser_run_options {
  const char* out_dir;
  int jobs;
  int cav_dim;
  int mech_dim;
  hmaser_method method;
} hmaser_run_options;

HMASER_API const char* hmaser_version(void);
HMASER_API const char* hmaser_last_error(void);
HMASER_API const char* hmaser_status_string(hmaser_status status);

/* Parameters, addressed by name: omega_m omega_c delta g_ac g_cm r kappa_a
 * kappa_b n_th alpha xi phi. */
HMASER_API hmaser_status hmaser_params_create(hmaser_params** out);
HMASER_API void hmaser_params_destroy(hmaser_params* params);
HMASER_API hmaser_status hmaser_params_set(hmaser_params* params, const char* key, double value);
HMASER_API hmaser_status hmaser_params_get(const hmaser_params* params, const char* key, double* value);

HMASER_API hmaser_status hmaser_gain_coefficients(const hmaser_params* params, double theta, double* a, double* b);
HMASER_API hmaser_status hmaser_trapping_roots(const hmaser_params* params, double theta_min, double theta_max,
                                               double* out, size_t capacity, size_t* count);
/* Theta values with g_ac Theta sqrt((k+1)/(omega_m r)) = m pi, m = 1..m_max. */
HMASER_API hmaser_status hmaser_photon_trapping_thetas(const hmaser_params* params, int k, int m_max, double* out,
                                                       size_t capacity, size_t* count);
HMASER_API hmaser_status hmaser_phonon_number_analytic(const hmaser_params* params, double theta, double* out);
HMASER_API hmaser_status hmaser_g2_phonon_analytic(const hmaser_params* params, double theta, double* out);
/* P_0..P_n_max into out[n_max + 1]. */
HMASER_API hmaser_status hmaser_photon_distribution(const hmaser_params* params, double theta, int n_max,
                                                    double* out);

typedef struct hmaser_steady_observables {
  double mean_number;
  double g2; /* NaN when undefined */
  double residual;
  double frame_shift;
  double tail_population;
} hmaser_steady_observables;

HMASER_API hmaser_status hmaser_phonon_steady_state(const hmaser_params* params, double theta, int mech_dim,
                                                    hmaser_bath bath, hmaser_steady_observables* out);
HMASER_API hmaser_status hmaser_photon_steady_state(const hmaser_params* params, double theta, int cav_dim,
                                                    hmaser_steady_observables* out);

/* Sweeps. Override keys use the config names ("params.g_cm", "sweep.method",
 * "dims.mech", "output.dir", ...). */
HMASER_API hmaser_status hmaser_sweep_load(const char* path, hmaser_sweep** out);
HMASER_API hmaser_status hmaser_sweep_set(hmaser_sweep* sweep, const char* key, const char* value);
HMASER_API hmaser_status hmaser_sweep_apply_options(hmaser_sweep* sweep, const hmaser_run_options* options);
HMASER_API hmaser_status hmaser_sweep_run(const hmaser_sweep* sweep, hmaser_result** out);
/* Trapping roots of the sweep's parameters over [sweep.root_min, sweep.root_max]
 * and the photon vacuum-trapping values, as a result table. */
HMASER_API hmaser_status hmaser_sweep_roots(const hmaser_sweep* sweep, hmaser_result** out);
HMASER_API void hmaser_sweep_destroy(hmaser_sweep* sweep);

HMASER_API size_t hmaser_result_rows(const hmaser_result* result);
HMASER_API size_t hmaser_result_unconverged(const hmaser_result* result);
HMASER_API double hmaser_result_wall_seconds(const hmaser_result* result);
/* Writes <out_dir>/<name>.csv and one SVG per observable; `written` (may be
 * NULL) receives the CSV path. */
HMASER_API hmaser_status hmaser_result_write(const hmaser_result* result, char* written, size_t capacity);
HMASER_API void hmaser_result_destroy(hmaser_result* result);

HMASER_API size_t hmaser_figure_tag_count(void);
HMASER_API const char* hmaser_figure_tag(size_t index);
/* Unknown tags fail with HMASER_ERR_UNKNOWN_TAG before any file is written. */
HMASER_API hmaser_status hmaser_figure(const char* tag, const hmaser_run_options* options, size_t* files_written,
                                       size_t* unconverged);

/* checks: comma-separated subset, "" for none, NULL for all. */
HMASER_API hmaser_status hmaser_validate(const hmaser_params* params, const char* checks, hmaser_report** out);
HMASER_API size_t hmaser_report_count(const hmaser_report* report);
HMASER_API int hmaser_report_passed(const hmaser_report* report);
HMASER_API const char* hmaser_report_text(const hmaser_report* report);
HMASER_API hmaser_status hmaser_report_check(const hmaser_report* report, size_t index, const char** name,
                                             int* passed, double* measured, double* threshold);
HMASER_API void hmaser_report_destroy(hmaser_report* report);

#ifdef __cplusplus
}
#endif

#endif /* HMASER_H_ */
