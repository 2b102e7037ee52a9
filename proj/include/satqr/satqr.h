// Copyright 2026 The satqr Authors
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

#ifndef SATQR_SATQR_H_
#define SATQR_SATQR_H_

/* C interface to the satqr simulator.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call that can fail returns a satqr_status; on failure the thread-local
 * satqr_last_error() describes it. Strings returned through char** are
 * owned by the caller and released with satqr_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SATQR_API __declspec(dllexport)
#else
#define SATQR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum satqr_status {
  SATQR_OK = 0,
  SATQR_ERR_INVALID_ARGUMENT = 1,
  SATQR_ERR_DOMAIN = 2,
  SATQR_ERR_VISIBILITY = 3,
  SATQR_ERR_QUADRATURE = 4,
  SATQR_ERR_CONFIG = 5,
  SATQR_ERR_IO = 6,
  SATQR_ERR_SIMULATION = 7,
  SATQR_ERR_INTERNAL = 8
} satqr_status;

typedef enum satqr_mode {
  SATQR_MODE_RUN = 0,   /* base configuration only */
  SATQR_MODE_SWEEP = 1, /* cartesian product of the sweep axes */
  SATQR_MODE_ORBIT = 2  /* orbit sweep per sweep point */
} satqr_mode;

typedef struct satqr_config satqr_config;
typedef struct satqr_result satqr_result;

/* Numeric view of one result row. NaN marks an empty cell. */
typedef struct satqr_row {
  const char* row_kind;
  const char* scenario;
  const char* status;
  const char* message;
  uint64_t seed;
  double phase_s;
  double ground_distance_km;
  double orbital_height_km;
  double sat_a_offset;
  double divergence_rad;
  double dephasing_time_s;
  double cutoff_s; /* INFINITY when no cutoff */
  uint32_t memory_modes;
  uint64_t samples;
  double total_time_s;
  double raw_rate;
  double raw_rate_se;
  double e_x;
  double e_x_se;
  double e_z;
  double e_z_se;
  double key_rate;
  double key_rate_se;
  uint64_t events;
  uint64_t discarded;
  double loss_a_sc_db;
  double tau_s;
  double raw_bits_per_pass;
  double key_bits_per_pass;
  double effective_key_rate;
} satqr_row;

SATQR_API const char* satqr_version(void);
SATQR_API const char* satqr_status_name(satqr_status status);
SATQR_API const char* satqr_last_error(void);
SATQR_API void satqr_string_free(char* s);

/* Configuration. */
SATQR_API satqr_status satqr_config_load(const char* path, satqr_config** out);
/* format: "json" or "yaml". */
SATQR_API satqr_status satqr_config_from_string(const char* text, const char* format,
                                                satqr_config** out);
SATQR_API void satqr_config_free(satqr_config* cfg);
SATQR_API satqr_status satqr_config_set_seed(satqr_config* cfg, uint64_t seed);
SATQR_API satqr_status satqr_config_set_workers(satqr_config* cfg, unsigned workers);
SATQR_API satqr_status satqr_config_override_samples(satqr_config* cfg, uint64_t samples);
SATQR_API satqr_status satqr_config_set_output(satqr_config* cfg, const char* dir,
                                               const char* format);
SATQR_API size_t satqr_config_warning_count(const satqr_config* cfg);
SATQR_API const char* satqr_config_warning(const satqr_config* cfg, size_t index);
SATQR_API satqr_status satqr_config_to_json(const satqr_config* cfg, char** out);
/* Output directory and format currently configured (borrowed strings). */
SATQR_API const char* satqr_config_output_dir(const satqr_config* cfg);
SATQR_API const char* satqr_config_output_format(const satqr_config* cfg);

/* Runs. */
SATQR_API satqr_status satqr_run(const satqr_config* cfg, satqr_mode mode, satqr_result** out);
SATQR_API void satqr_result_free(satqr_result* res);
SATQR_API size_t satqr_result_rows(const satqr_result* res);
/* Rows whose status is not "ok". */
SATQR_API size_t satqr_result_failed_rows(const satqr_result* res);
/* String fields stay valid until the result is freed. */
SATQR_API satqr_status satqr_result_get(const satqr_result* res, size_t index, satqr_row* out);
SATQR_API satqr_status satqr_result_to_csv(const satqr_result* res, char** out);
SATQR_API satqr_status satqr_result_to_json(const satqr_result* res, char** out);
/* Writes results, record dumps and manifest.json under dir. format: csv, json
 * or both; NULL arguments take the values from the configuration. */
SATQR_API satqr_status satqr_result_write(const satqr_result* res, const char* dir,
                                          const char* format);

/* Recomputes key rates from record dumps ("time,p1,p2,p3,p4" CSV) and returns
 * the report table as CSV. */
SATQR_API satqr_status satqr_report(const char* const* dump_paths, size_t count, char** out_csv);

/* Physics helpers. */
SATQR_API satqr_status satqr_orbital_period(double height_km, double* out_s);
SATQR_API satqr_status satqr_max_visible_distance(double height_km, double* out_km);
SATQR_API satqr_status satqr_binary_entropy(double p, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SATQR_SATQR_H_ */
