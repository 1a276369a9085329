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
// Exercises the C API from C: lifecycle, a small sweep, error reporting.
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "kfpq/kfpq.h"

static int failures = 0;

#define EXPECT(cond)                                                                                                   \
    do {                                                                                                               \
        if (!(cond)) {                                                                                                 \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond);                                        \
            ++failures;                                                                                                \
        }                                                                                                              \
    } while (0)

static size_t find_column(const kfpq_result *r, const char *name) {
    for (size_t c = 0; c < kfpq_result_column_count(r, 0); ++c)
        if (strcmp(kfpq_result_column_name(r, 0, c), name) == 0) return c;
    return (size_t)-1;
}

int main(void) {
    EXPECT(kfpq_schema_version() == 1);
    EXPECT(strcmp(kfpq_status_name(KFPQ_ERR_CONFIG), "Config") == 0);

    kfpq_sweep *s = NULL;
    EXPECT(kfpq_sweep_create("nope", &s) == KFPQ_ERR_CONFIG);
    EXPECT(s == NULL);
    EXPECT(strstr(kfpq_last_error(), "command") != NULL);

    EXPECT(kfpq_sweep_create("norms", &s) == KFPQ_OK);
    const double nu[] = {1.0};
    EXPECT(kfpq_sweep_set_nu(s, nu, 1) == KFPQ_OK);
    EXPECT(kfpq_sweep_set_dims(s, 24) == KFPQ_OK);
    EXPECT(kfpq_sweep_set_t_grid(s, 1.0, 0.5, 3, 1) == KFPQ_OK);
    EXPECT(kfpq_sweep_validate(s) == KFPQ_ERR_CONFIG);
    EXPECT(strncmp(kfpq_last_error(), "t:", 2) == 0);
    EXPECT(kfpq_sweep_set_t_grid(s, 0.5, 2.0, 3, 1) == KFPQ_OK);

    kfpq_result *r = NULL;
    EXPECT(kfpq_sweep_run(s, &r) == KFPQ_OK);
    EXPECT(r != NULL);
    if (r) {
        EXPECT(strcmp(kfpq_result_command(r), "norms") == 0);
        EXPECT(kfpq_result_table_count(r) == 1);
        EXPECT(kfpq_result_row_count(r, 0) == 3);
        const size_t ca = find_column(r, "analytic"), ct = find_column(r, "t");
        EXPECT(ca != (size_t)-1 && ct != (size_t)-1);
        double t = 0, a = 0;
        EXPECT(kfpq_result_real(r, 0, 0, ct, &t) == KFPQ_OK);
        EXPECT(kfpq_result_real(r, 0, 0, ca, &a) == KFPQ_OK);
        double direct = 0;
        EXPECT(kfpq_semigroup_norm(t, 1.0, &direct) == KFPQ_OK);
        EXPECT(fabs(a - direct) == 0.0);
        const char *text = NULL;
        EXPECT(kfpq_result_text(r, 0, 0, ca, &text) == KFPQ_ERR_INVALID_PARAMETER);
        EXPECT(kfpq_result_real(r, 0, 99, ca, &a) == KFPQ_ERR_INVALID_PARAMETER);
        kfpq_result_destroy(r);
    }
    kfpq_sweep_destroy(s);

    double d0 = 0, integral = 0, bound = 0;
    EXPECT(kfpq_delta0(1e-3, 1.0, KFPQ_ALPHA_ZERO, &d0) == KFPQ_OK);
    EXPECT(fabs(d0 / (1e-9 / 12.0) - 1.0) < 1e-3);
    EXPECT(kfpq_resolvent_integral(1e4, &integral, &bound) == KFPQ_OK);
    EXPECT(integral > 0 && integral <= bound);
    EXPECT(kfpq_semigroup_norm(1.0, -1.0, &d0) != KFPQ_OK);
    EXPECT(kfpq_sweep_set_nu(NULL, nu, 1) == KFPQ_ERR_INVALID_PARAMETER);

    if (failures) fprintf(stderr, "%d failure(s)\n", failures);
    return failures ? 1 : 0;
}
