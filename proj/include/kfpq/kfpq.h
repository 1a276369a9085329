// Copyright 2026 The kfpq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef KFPQ_KFPQ_H
#define KFPQ_KFPQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KFPQ_API __declspec(dllimport)
#elif defined(KFPQ_BUILDING)
#define KFPQ_API __attribute__((visibility("default")))
#else
#define KFPQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Status codes. Values are stable across releases.
typedef enum kfpq_status {
    KFPQ_OK = 0,
    KFPQ_ERR_INVALID_PARAMETER = 1,
    KFPQ_ERR_NON_FINITE = 2,
    KFPQ_ERR_SINGULAR_BIQUATERNION = 3,
    KFPQ_ERR_NON_SYMMETRIC_INPUT = 4,
    KFPQ_ERR_NON_REAL_DELTA0 = 5,
    KFPQ_ERR_DEGENERATE_EIGENBASIS = 6,
    KFPQ_ERR_QUADRATURE_NOT_CONVERGED = 7,
    KFPQ_ERR_GRID_UNDER_RESOLVED = 8,
    KFPQ_ERR_EXP_NOT_CONVERGED = 9,
    KFPQ_ERR_POWER_ITERATION_STALLED = 10,
    KFPQ_ERR_TRUNCATION_NOT_CONVERGED = 11,
    KFPQ_ERR_INDEFINITE_PENCIL = 12,
    KFPQ_ERR_UNKNOWN_LABEL = 13,
    KFPQ_ERR_CONFIG = 14,
    KFPQ_ERR_INTERNAL = 99
} kfpq_status;

typedef enum kfpq_column_kind {
    KFPQ_COLUMN_REAL = 0,
    KFPQ_COLUMN_INT = 1,
    KFPQ_COLUMN_FLAG = 2,
    KFPQ_COLUMN_TEXT = 3
} kfpq_column_kind;

typedef enum kfpq_alpha { KFPQ_ALPHA_ZERO = 0, KFPQ_ALPHA_HALF_PI = 1 } kfpq_alpha;

typedef struct kfpq_sweep kfpq_sweep;   // sweep configuration
typedef struct kfpq_result kfpq_result; // tables produced by a sweep

KFPQ_API const char *kfpq_version(void);
KFPQ_API int kfpq_schema_version(void);
KFPQ_API const char *kfpq_status_name(kfpq_status status);
// Message of the last failing call on the calling thread; "" if none.
KFPQ_API const char *kfpq_last_error(void);
// 1 for config errors (bad parameters), 0 otherwise.
KFPQ_API int kfpq_status_is_config(kfpq_status status);

// Commands: norms, delta0, positivity, bargmann, resolvent, optimality, degenerate, subelliptic, verify-all.
KFPQ_API kfpq_status kfpq_sweep_create(const char *command, kfpq_sweep **out);
KFPQ_API void kfpq_sweep_destroy(kfpq_sweep *sweep);
KFPQ_API kfpq_status kfpq_sweep_set_nu(kfpq_sweep *sweep, const double *nu, size_t count);
KFPQ_API kfpq_status kfpq_sweep_set_alpha(kfpq_sweep *sweep, kfpq_alpha alpha);
KFPQ_API kfpq_status kfpq_sweep_set_lambda1(kfpq_sweep *sweep, double lambda1);
KFPQ_API kfpq_status kfpq_sweep_set_t_grid(kfpq_sweep *sweep, double t_min, double t_max, int count, int log_spacing);
KFPQ_API kfpq_status kfpq_sweep_set_dims(kfpq_sweep *sweep, int dims);
KFPQ_API kfpq_status kfpq_sweep_set_pencil_dims(kfpq_sweep *sweep, const int *dims, size_t count);
KFPQ_API kfpq_status kfpq_sweep_set_seed(kfpq_sweep *sweep, uint64_t seed);
KFPQ_API kfpq_status kfpq_sweep_set_tolerance(kfpq_sweep *sweep, double convergence_tol);
KFPQ_API kfpq_status kfpq_sweep_set_strict(kfpq_sweep *sweep, int strict);
// Checks the configuration without running it.
KFPQ_API kfpq_status kfpq_sweep_validate(const kfpq_sweep *sweep);
KFPQ_API kfpq_status kfpq_sweep_run(const kfpq_sweep *sweep, kfpq_result **out);

KFPQ_API void kfpq_result_destroy(kfpq_result *result);
KFPQ_API const char *kfpq_result_command(const kfpq_result *result);
// 1 if every acceptance criterion passed (verify-all), 1 for other commands.
KFPQ_API int kfpq_result_passed(const kfpq_result *result);
KFPQ_API size_t kfpq_result_table_count(const kfpq_result *result);
KFPQ_API const char *kfpq_result_table_name(const kfpq_result *result, size_t table);
KFPQ_API size_t kfpq_result_column_count(const kfpq_result *result, size_t table);
KFPQ_API size_t kfpq_result_row_count(const kfpq_result *result, size_t table);
KFPQ_API const char *kfpq_result_column_name(const kfpq_result *result, size_t table, size_t column);
KFPQ_API kfpq_column_kind kfpq_result_column_kind(const kfpq_result *result, size_t table, size_t column);
// Volatile columns (wall-clock timings) are not reproducible between runs.
KFPQ_API int kfpq_result_column_volatile(const kfpq_result *result, size_t table, size_t column);
// Numeric cells (real, int, flag); NaN marks a value that is not available.
KFPQ_API kfpq_status kfpq_result_real(const kfpq_result *result, size_t table, size_t row, size_t column, double *out);
// Text cells; the pointer lives as long as the result.
KFPQ_API kfpq_status kfpq_result_text(const kfpq_result *result, size_t table, size_t row, size_t column,
                                      const char **out);

// Direct evaluations.
KFPQ_API kfpq_status kfpq_semigroup_norm(double t, double nu, double *norm);
KFPQ_API kfpq_status kfpq_delta0(double t, double nu, kfpq_alpha alpha, double *delta0);
KFPQ_API kfpq_status kfpq_resolvent_integral(double nu, double *integral, double *log_bound);

#ifdef __cplusplus
}
#endif

#endif
