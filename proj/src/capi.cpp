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
#include "kfpq/kfpq.h"

#include <cmath>
#include <string>

#include "exactnorms.hpp"
#include "positivity.hpp"
#include "sweep.hpp"

struct kfpq_sweep {
    kfpq::sweep::Config config;
};

struct kfpq_result {
    kfpq::sweep::Result result;
    std::string command;
};

namespace {

thread_local std::string g_last_error;

kfpq_status ok() {
    g_last_error.clear();
    return KFPQ_OK;
}

kfpq_status set_error(kfpq_status s, const std::string &msg) {
    g_last_error = msg;
    return s;
}

template <class F> kfpq_status guarded(F f) {
    try {
        f();
        return ok();
    } catch (const kfpq::Error &e) {
        return set_error(static_cast<kfpq_status>(e.code()), e.what());
    } catch (const std::exception &e) {
        return set_error(KFPQ_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(KFPQ_ERR_INTERNAL, "unknown exception");
    }
}

kfpq_status null_arg(const char *what) { return set_error(KFPQ_ERR_INVALID_PARAMETER, std::string(what) + " is null"); }

const kfpq::sweep::Table *table_at(const kfpq_result *r, size_t t) {
    if (!r || t >= r->result.tables.size()) return nullptr;
    return &r->result.tables[t];
}

} // namespace

extern "C" {

const char *kfpq_version(void) { return "1.0.0"; }
int kfpq_schema_version(void) { return kfpq::sweep::kSchemaVersion; }

const char *kfpq_status_name(kfpq_status status) {
    if (status == KFPQ_ERR_INTERNAL) return "Internal";
    return kfpq::error_name(static_cast<kfpq::ErrorCode>(status));
}

const char *kfpq_last_error(void) { return g_last_error.c_str(); }

int kfpq_status_is_config(kfpq_status s) {
    return s == KFPQ_ERR_CONFIG || s == KFPQ_ERR_INVALID_PARAMETER || s == KFPQ_ERR_UNKNOWN_LABEL;
}

kfpq_status kfpq_sweep_create(const char *command, kfpq_sweep **out) {
    if (!command) return null_arg("command");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto *s = new kfpq_sweep;
        try {
            s->config.command = kfpq::sweep::parse_command(command);
        } catch (...) {
            delete s;
            throw;
        }
        *out = s;
    });
}

void kfpq_sweep_destroy(kfpq_sweep *sweep) { delete sweep; }

kfpq_status kfpq_sweep_set_nu(kfpq_sweep *s, const double *nu, size_t count) {
    if (!s) return null_arg("sweep");
    if (count > 0 && !nu) return null_arg("nu");
    s->config.nus.assign(nu, nu + count);
    return ok();
}

kfpq_status kfpq_sweep_set_alpha(kfpq_sweep *s, kfpq_alpha alpha) {
    if (!s) return null_arg("sweep");
    if (alpha != KFPQ_ALPHA_ZERO && alpha != KFPQ_ALPHA_HALF_PI)
        return set_error(KFPQ_ERR_CONFIG, "alpha: must be 0 or pi/2");
    s->config.alpha_set = true;
    s->config.alpha = alpha == KFPQ_ALPHA_ZERO ? kfpq::symbols::Alpha::Zero : kfpq::symbols::Alpha::HalfPi;
    return ok();
}

kfpq_status kfpq_sweep_set_lambda1(kfpq_sweep *s, double lambda1) {
    if (!s) return null_arg("sweep");
    s->config.lambda1 = lambda1;
    return ok();
}

kfpq_status kfpq_sweep_set_t_grid(kfpq_sweep *s, double t_min, double t_max, int count, int log_spacing) {
    if (!s) return null_arg("sweep");
    s->config.t_set = true;
    s->config.t = {t_min, t_max, count, log_spacing != 0};
    return ok();
}

kfpq_status kfpq_sweep_set_dims(kfpq_sweep *s, int dims) {
    if (!s) return null_arg("sweep");
    s->config.dims = dims;
    return ok();
}

kfpq_status kfpq_sweep_set_pencil_dims(kfpq_sweep *s, const int *dims, size_t count) {
    if (!s) return null_arg("sweep");
    if (count > 0 && !dims) return null_arg("dims");
    s->config.pencil_dims.assign(dims, dims + count);
    return ok();
}

kfpq_status kfpq_sweep_set_seed(kfpq_sweep *s, uint64_t seed) {
    if (!s) return null_arg("sweep");
    s->config.seed = seed;
    return ok();
}

kfpq_status kfpq_sweep_set_tolerance(kfpq_sweep *s, double tol) {
    if (!s) return null_arg("sweep");
    s->config.conv_tol = tol;
    return ok();
}

kfpq_status kfpq_sweep_set_strict(kfpq_sweep *s, int strict) {
    if (!s) return null_arg("sweep");
    s->config.strict = strict != 0;
    return ok();
}

kfpq_status kfpq_sweep_validate(const kfpq_sweep *s) {
    if (!s) return null_arg("sweep");
    return guarded([&] { kfpq::sweep::validate(s->config); });
}

kfpq_status kfpq_sweep_run(const kfpq_sweep *s, kfpq_result **out) {
    if (!s) return null_arg("sweep");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto *r = new kfpq_result;
        try {
            r->result = kfpq::sweep::run(s->config);
        } catch (...) {
            delete r;
            throw;
        }
        r->command = kfpq::sweep::command_name(r->result.command);
        *out = r;
    });
}

void kfpq_result_destroy(kfpq_result *r) { delete r; }

const char *kfpq_result_command(const kfpq_result *r) { return r ? r->command.c_str() : ""; }
int kfpq_result_passed(const kfpq_result *r) { return r && r->result.passed ? 1 : 0; }
size_t kfpq_result_table_count(const kfpq_result *r) { return r ? r->result.tables.size() : 0; }

const char *kfpq_result_table_name(const kfpq_result *r, size_t t) {
    const auto *tb = table_at(r, t);
    return tb ? tb->name.c_str() : "";
}

size_t kfpq_result_column_count(const kfpq_result *r, size_t t) {
    const auto *tb = table_at(r, t);
    return tb ? tb->columns.size() : 0;
}

size_t kfpq_result_row_count(const kfpq_result *r, size_t t) {
    const auto *tb = table_at(r, t);
    return tb ? tb->rows.size() : 0;
}

const char *kfpq_result_column_name(const kfpq_result *r, size_t t, size_t c) {
    const auto *tb = table_at(r, t);
    return tb && c < tb->columns.size() ? tb->columns[c].name.c_str() : "";
}

kfpq_column_kind kfpq_result_column_kind(const kfpq_result *r, size_t t, size_t c) {
    const auto *tb = table_at(r, t);
    if (!tb || c >= tb->columns.size()) return KFPQ_COLUMN_REAL;
    return static_cast<kfpq_column_kind>(tb->columns[c].kind);
}

int kfpq_result_column_volatile(const kfpq_result *r, size_t t, size_t c) {
    const auto *tb = table_at(r, t);
    return tb && c < tb->columns.size() && tb->columns[c].is_volatile ? 1 : 0;
}

kfpq_status kfpq_result_real(const kfpq_result *r, size_t t, size_t row, size_t c, double *out) {
    if (!out) return null_arg("out");
    const auto *tb = table_at(r, t);
    if (!tb || row >= tb->rows.size() || c >= tb->columns.size())
        return set_error(KFPQ_ERR_INVALID_PARAMETER, "cell index out of range");
    const auto *v = std::get_if<double>(&tb->rows[row][c]);
    if (!v) return set_error(KFPQ_ERR_INVALID_PARAMETER, "cell is text");
    *out = *v;
    return ok();
}

kfpq_status kfpq_result_text(const kfpq_result *r, size_t t, size_t row, size_t c, const char **out) {
    if (!out) return null_arg("out");
    const auto *tb = table_at(r, t);
    if (!tb || row >= tb->rows.size() || c >= tb->columns.size())
        return set_error(KFPQ_ERR_INVALID_PARAMETER, "cell index out of range");
    const auto *v = std::get_if<std::string>(&tb->rows[row][c]);
    if (!v) return set_error(KFPQ_ERR_INVALID_PARAMETER, "cell is numeric");
    *out = v->c_str();
    return ok();
}

kfpq_status kfpq_semigroup_norm(double t, double nu, double *norm) {
    if (!norm) return null_arg("norm");
    return guarded([&] { *norm = kfpq::exactnorms::semigroup_norm(t, nu).norm; });
}

kfpq_status kfpq_delta0(double t, double nu, kfpq_alpha alpha, double *delta0) {
    if (!delta0) return null_arg("delta0");
    return guarded([&] {
        const auto a = alpha == KFPQ_ALPHA_ZERO ? kfpq::symbols::Alpha::Zero : kfpq::symbols::Alpha::HalfPi;
        *delta0 = kfpq::positivity::delta0(t, kfpq::symbols::ModelParams::make(nu, a));
    });
}

kfpq_status kfpq_resolvent_integral(double nu, double *integral, double *log_bound) {
    if (!integral) return null_arg("integral");
    return guarded([&] {
        const auto r = kfpq::exactnorms::resolvent_bound(nu);
        *integral = r.integral;
        if (log_bound) *log_bound = r.log_bound;
    });
}

} // extern "C"
