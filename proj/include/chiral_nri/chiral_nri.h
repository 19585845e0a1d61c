// Copyright 2026 The chiral-nri Authors
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

/* C interface to the chiral-nri library. All functions are thread-safe on
 * distinct handles. Functions returning cnri_status leave a message for
 * cnri_last_error() on failure. */
#ifndef CHIRAL_NRI_H_
#define CHIRAL_NRI_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(CNRI_BUILDING_LIBRARY)
#define CNRI_API __declspec(dllexport)
#else
#define CNRI_API __declspec(dllimport)
#endif
#else
#define CNRI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cnri_status {
  CNRI_OK = 0,
  CNRI_INVALID_ARGUMENT = 1,
  CNRI_SINGULAR_DENOMINATOR = 2,
  CNRI_LOCAL_FIELD_SINGULAR = 3,
  CNRI_INVALID_MODEL = 4,
  CNRI_DEGENERATE_KERNEL = 5,
  CNRI_SINGULAR_SHIFTED_GENERATOR = 6,
  CNRI_CONFIG_ERROR = 7,
  CNRI_IO_ERROR = 8,
  CNRI_EMPTY_OUTPUT = 9,
  CNRI_OUT_OF_MEMORY = 10,
  CNRI_INTERNAL_ERROR = 11
} cnri_status;

typedef enum cnri_flag {
  CNRI_FLAG_NONE = 0,
  CNRI_FLAG_POLE = 1,
  CNRI_FLAG_LOCAL_FIELD_SINGULAR = 2
} cnri_flag;

typedef struct cnri_complex {
  double re;
  double im;
} cnri_complex;

/* Rates in units of gamma; gamma_scale is gamma in s^-1. */
typedef struct cnri_rates {
  double gamma_scale;
  double gamma21;
  double gamma31;
  double gamma42;
  double gamma43;
  double gamma_c;
} cnri_rates;

typedef struct cnri_medium {
  double atom_density; /* m^-3 */
  double wavelength;   /* m */
  int paper_literal_mapping;
  int gamma6_includes_dephasing;
} cnri_medium;

typedef struct cnri_drive {
  double omega_c;
  double omega_s;
  double theta; /* radians */
} cnri_drive;

typedef struct cnri_detunings {
  double delta_p;
  double delta_c;
  double delta_s;
  double delta_m;
} cnri_detunings;

/* SI response coefficients. */
typedef struct cnri_alpha_set {
  cnri_complex ee;
  cnri_complex eh;
  cnri_complex he;
  cnri_complex hh;
} cnri_alpha_set;

typedef struct cnri_constitutive {
  cnri_complex eps_r;
  cnri_complex mu_r;
  cnri_complex xi_eh;
  cnri_complex xi_he;
  cnri_complex n;
} cnri_constitutive;

typedef struct cnri_record {
  double delta_p;
  cnri_flag flag;
  cnri_constitutive values; /* vacuum values when flag != CNRI_FLAG_NONE */
} cnri_record;

typedef struct cnri_band {
  double lo;
  double hi;
  int lo_bracketed;
  int hi_bracketed;
  double width;
  double min_re_n;
  double min_re_n_at;
  double max_im_n;
  double min_im_n;
  size_t first_index;
  size_t last_index;
} cnri_band;

typedef struct cnri_config cnri_config;
typedef struct cnri_sweep cnri_sweep;
typedef struct cnri_oracle_report cnri_oracle_report;

CNRI_API const char* cnri_version(void);
CNRI_API const char* cnri_status_string(cnri_status status);
/* Message of the last failure on the calling thread; "" if none. */
CNRI_API const char* cnri_last_error(void);

CNRI_API void cnri_default_rates(cnri_rates* out);
CNRI_API void cnri_default_medium(cnri_medium* out);
CNRI_API void cnri_default_drive(cnri_drive* out);
CNRI_API void cnri_default_detunings(cnri_detunings* out);

/* Single-point evaluation. alphas may be NULL. */
CNRI_API cnri_status cnri_evaluate_point(const cnri_rates* rates, const cnri_medium* medium,
                                         const cnri_drive* drive, const cnri_detunings* det,
                                         cnri_alpha_set* alphas, cnri_constitutive* out);

/* Response coefficients from the Liouville steady-state solve. level_frame
 * selects the level-energy frame instead of independent detunings.
 * residual may be NULL. */
CNRI_API cnri_status cnri_oracle_alpha_set(const cnri_rates* rates, const cnri_medium* medium,
                                           const cnri_drive* drive, const cnri_detunings* det,
                                           int level_frame, cnri_alpha_set* out,
                                           double* residual);

CNRI_API cnri_status cnri_refractive_index(cnri_complex eps_r, cnri_complex mu_r,
                                           cnri_complex xi_eh, cnri_complex xi_he,
                                           cnri_complex* n);

/* Run configuration. */
CNRI_API cnri_status cnri_config_default(cnri_config** out);
CNRI_API cnri_status cnri_config_load_file(const char* path, cnri_config** out);
CNRI_API cnri_status cnri_config_load_string(const char* text, const char* source,
                                             cnri_config** out);
CNRI_API void cnri_config_free(cnri_config* config);
CNRI_API cnri_status cnri_config_set_output_dir(cnri_config* config, const char* dir);
/* NULL for a NULL handle. */
CNRI_API const char* cnri_config_output_dir(const cnri_config* config);
CNRI_API size_t cnri_config_scenario_count(const cnri_config* config);

/* Sweeps. jobs == 0 means one thread. */
CNRI_API cnri_status cnri_sweep_run(const cnri_config* config, unsigned jobs, cnri_sweep** out);
/* Rebuilds a sweep from <label>.csv files previously written to dir. */
CNRI_API cnri_status cnri_sweep_load_csv(const cnri_config* config, const char* dir,
                                         cnri_sweep** out);
CNRI_API void cnri_sweep_free(cnri_sweep* sweep);
CNRI_API size_t cnri_sweep_scenario_count(const cnri_sweep* sweep);
/* NULL when the handle or index is invalid. */
CNRI_API const char* cnri_sweep_scenario_label(const cnri_sweep* sweep, size_t scenario);
CNRI_API size_t cnri_sweep_record_count(const cnri_sweep* sweep, size_t scenario);
CNRI_API cnri_status cnri_sweep_record(const cnri_sweep* sweep, size_t scenario, size_t index,
                                       cnri_record* out);
/* Unflagged records over all scenarios. */
CNRI_API size_t cnri_sweep_valid_count(const cnri_sweep* sweep);
CNRI_API size_t cnri_sweep_band_count(const cnri_sweep* sweep, size_t scenario);
CNRI_API cnri_status cnri_sweep_band(const cnri_sweep* sweep, size_t scenario, size_t index,
                                     cnri_band* out);
/* <label>.csv per scenario plus summary.json when json output is enabled. */
CNRI_API cnri_status cnri_sweep_write_data(const cnri_sweep* sweep, const char* dir);
/* bands.json */
CNRI_API cnri_status cnri_sweep_write_bands(const cnri_sweep* sweep, const char* dir);
CNRI_API cnri_status cnri_sweep_write_figures(const cnri_sweep* sweep, const char* dir);

/* Closed form vs oracle comparison along the configured sweep. */
CNRI_API cnri_status cnri_oracle_run(const cnri_config* config, unsigned jobs,
                                     cnri_oracle_report** out);
CNRI_API void cnri_oracle_free(cnri_oracle_report* report);
CNRI_API cnri_status cnri_oracle_write(const cnri_oracle_report* report, const char* dir);
CNRI_API double cnri_oracle_max_residual(const cnri_oracle_report* report);
CNRI_API int cnri_oracle_residuals_ok(const cnri_oracle_report* report);
CNRI_API size_t cnri_oracle_finding_count(const cnri_oracle_report* report);
CNRI_API size_t cnri_oracle_row_count(const cnri_oracle_report* report, size_t scenario);

#ifdef __cplusplus
}
#endif

#endif  // CHIRAL_NRI_H_
