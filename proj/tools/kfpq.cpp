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
// Command line front end. Talks to the library only through kfpq.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kfpq/kfpq.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitFailedChecks = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double tmin = 0, tmax = 0;
    int count = 0;
    bool log = true;
};

struct Options {
    std::string command;
    std::optional<std::vector<double>> nu;
    std::optional<std::string> alpha;
    std::optional<double> lambda1;
    std::optional<GridSpec> t;
    std::optional<int> dims;
    std::optional<std::vector<int>> pencil_dims;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::optional<bool> strict;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

double parse_double(const std::string &field, const std::string &s) {
    double v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw ConfigError(field + ": not a number: '" + s + "'");
    return v;
}

int parse_int(const std::string &field, const std::string &s) {
    int v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw ConfigError(field + ": not an integer: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

// min:max:count[:log|lin]
GridSpec parse_grid(const std::string &s) {
    const auto parts = split(s, ':');
    if (parts.size() != 3 && parts.size() != 4) throw ConfigError("t: expected min:max:count[:log|lin]");
    GridSpec g;
    g.tmin = parse_double("t", parts[0]);
    g.tmax = parse_double("t", parts[1]);
    g.count = parse_int("t", parts[2]);
    if (parts.size() == 4) {
        if (parts[3] == "log") g.log = true;
        else if (parts[3] == "lin") g.log = false;
        else throw ConfigError("t: spacing must be log or lin");
    }
    return g;
}

std::vector<double> parse_nu_list(const std::string &s) {
    std::vector<double> v;
    for (const auto &p : split(s, ',')) v.push_back(parse_double("nu", p));
    return v;
}

std::vector<int> parse_int_list(const std::string &field, const std::string &s) {
    std::vector<int> v;
    for (const auto &p : split(s, ',')) v.push_back(parse_int(field, p));
    return v;
}

template <class T> T json_get(const json &j, const std::string &key) {
    try {
        return j.get<T>();
    } catch (const json::exception &) {
        throw ConfigError(key + ": wrong type in config file");
    }
}

// Flat JSON object; keys mirror the long flags.
Options load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    Options o;
    for (const auto &[key, v] : j.items()) {
        if (key == "nu") {
            if (v.is_array()) o.nu = json_get<std::vector<double>>(v, key);
            else o.nu = std::vector<double>{json_get<double>(v, key)};
        } else if (key == "alpha") {
            o.alpha = v.is_string() ? v.get<std::string>() : std::to_string(json_get<int>(v, key));
        } else if (key == "lambda1") {
            o.lambda1 = json_get<double>(v, key);
        } else if (key == "t") {
            o.t = parse_grid(json_get<std::string>(v, key));
        } else if (key == "dims") {
            o.dims = json_get<int>(v, key);
        } else if (key == "pencil_dims") {
            o.pencil_dims = json_get<std::vector<int>>(v, key);
        } else if (key == "seed") {
            o.seed = json_get<std::uint64_t>(v, key);
        } else if (key == "tolerance") {
            o.tolerance = json_get<double>(v, key);
        } else if (key == "strict") {
            o.strict = json_get<bool>(v, key);
        } else if (key == "out") {
            o.out = json_get<std::string>(v, key);
        } else if (key == "format") {
            o.format = json_get<std::string>(v, key);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return o;
}

struct SweepDeleter {
    void operator()(kfpq_sweep *s) const { kfpq_sweep_destroy(s); }
};
struct ResultDeleter {
    void operator()(kfpq_result *r) const { kfpq_result_destroy(r); }
};

struct LibError {
    kfpq_status status;
    std::string message;
};

void check(kfpq_status s) {
    if (s != KFPQ_OK) throw LibError{s, kfpq_last_error()};
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Columns that go into artifacts, i.e. everything except wall-clock timings.
std::vector<size_t> stable_columns(const kfpq_result *r, size_t t) {
    std::vector<size_t> cols;
    for (size_t c = 0; c < kfpq_result_column_count(r, t); ++c)
        if (!kfpq_result_column_volatile(r, t, c)) cols.push_back(c);
    return cols;
}

void write_csv_table(std::ostream &os, const kfpq_result *r, size_t t) {
    os << "# kfpq schema_version=" << kfpq_schema_version() << " command=" << kfpq_result_command(r)
       << " table=" << kfpq_result_table_name(r, t) << "\n";
    const auto cols = stable_columns(r, t);
    for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << kfpq_result_column_name(r, t, cols[i]);
    os << "\n";
    for (size_t row = 0; row < kfpq_result_row_count(r, t); ++row) {
        for (size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ",";
            const size_t c = cols[i];
            const kfpq_column_kind k = kfpq_result_column_kind(r, t, c);
            if (k == KFPQ_COLUMN_TEXT) {
                const char *s = nullptr;
                check(kfpq_result_text(r, t, row, c, &s));
                os << csv_escape(s);
                continue;
            }
            double v = 0;
            check(kfpq_result_real(r, t, row, c, &v));
            if (k == KFPQ_COLUMN_REAL || !std::isfinite(v)) os << format_real(v);
            else os << static_cast<long long>(v);
        }
        os << "\n";
    }
}

json table_json(const kfpq_result *r, size_t t) {
    const auto cols = stable_columns(r, t);
    json columns = json::array(), rows = json::array();
    for (size_t c : cols) columns.push_back(kfpq_result_column_name(r, t, c));
    for (size_t row = 0; row < kfpq_result_row_count(r, t); ++row) {
        json line = json::array();
        for (size_t c : cols) {
            const kfpq_column_kind k = kfpq_result_column_kind(r, t, c);
            if (k == KFPQ_COLUMN_TEXT) {
                const char *s = nullptr;
                check(kfpq_result_text(r, t, row, c, &s));
                line.push_back(s);
                continue;
            }
            double v = 0;
            check(kfpq_result_real(r, t, row, c, &v));
            if (!std::isfinite(v)) line.push_back(nullptr);
            else if (k == KFPQ_COLUMN_INT) line.push_back(static_cast<long long>(v));
            else if (k == KFPQ_COLUMN_FLAG) line.push_back(v != 0.0);
            else line.push_back(v);
        }
        rows.push_back(std::move(line));
    }
    return json{{"name", kfpq_result_table_name(r, t)}, {"columns", columns}, {"rows", rows}};
}

void write_output(const kfpq_result *r, const std::string &format, const std::optional<std::string> &out) {
    const size_t n = kfpq_result_table_count(r);
    if (format == "json") {
        json doc{{"schema_version", kfpq_schema_version()}, {"command", kfpq_result_command(r)}};
        doc["tables"] = json::array();
        for (size_t t = 0; t < n; ++t) doc["tables"].push_back(table_json(r, t));
        const std::string text = doc.dump(2) + "\n";
        if (!out) {
            std::cout << text;
            return;
        }
        std::ofstream f(*out, std::ios::binary);
        if (!f) throw ConfigError("out: cannot write " + *out);
        f << text;
        return;
    }
    if (!out) {
        for (size_t t = 0; t < n; ++t) {
            if (t) std::cout << "\n";
            write_csv_table(std::cout, r, t);
        }
        return;
    }
    // several tables: one file each, <stem>_<table><ext>
    const std::filesystem::path base(*out);
    for (size_t t = 0; t < n; ++t) {
        std::filesystem::path p = base;
        if (n > 1) {
            const std::string ext = base.has_extension() ? base.extension().string() : ".csv";
            p = base.parent_path() / (base.stem().string() + "_" + kfpq_result_table_name(r, t) + ext);
        }
        std::ofstream f(p, std::ios::binary);
        if (!f) throw ConfigError("out: cannot write " + p.string());
        write_csv_table(f, r, t);
    }
}

void print_timings(const kfpq_result *r) {
    for (size_t t = 0; t < kfpq_result_table_count(r); ++t)
        for (size_t c = 0; c < kfpq_result_column_count(r, t); ++c) {
            if (!kfpq_result_column_volatile(r, t, c)) continue;
            for (size_t row = 0; row < kfpq_result_row_count(r, t); ++row) {
                double v = 0;
                if (kfpq_result_real(r, t, row, c, &v) == KFPQ_OK)
                    std::cerr << kfpq_result_table_name(r, t) << "[" << row << "]." << kfpq_result_column_name(r, t, c)
                              << " = " << format_real(v) << "\n";
            }
        }
}

int run(const Options &o) {
    kfpq_sweep *raw = nullptr;
    check(kfpq_sweep_create(o.command.c_str(), &raw));
    std::unique_ptr<kfpq_sweep, SweepDeleter> sweep(raw);
    if (o.nu) check(kfpq_sweep_set_nu(sweep.get(), o.nu->data(), o.nu->size()));
    if (o.alpha) {
        const std::string &a = *o.alpha;
        if (a == "0") check(kfpq_sweep_set_alpha(sweep.get(), KFPQ_ALPHA_ZERO));
        else if (a == "pi2" || a == "pi/2") check(kfpq_sweep_set_alpha(sweep.get(), KFPQ_ALPHA_HALF_PI));
        else throw ConfigError("alpha: must be 0 or pi2");
    }
    if (o.lambda1) check(kfpq_sweep_set_lambda1(sweep.get(), *o.lambda1));
    if (o.t) check(kfpq_sweep_set_t_grid(sweep.get(), o.t->tmin, o.t->tmax, o.t->count, o.t->log ? 1 : 0));
    if (o.dims) check(kfpq_sweep_set_dims(sweep.get(), *o.dims));
    if (o.pencil_dims)
        check(kfpq_sweep_set_pencil_dims(sweep.get(), o.pencil_dims->data(), o.pencil_dims->size()));
    if (o.seed) check(kfpq_sweep_set_seed(sweep.get(), *o.seed));
    if (o.tolerance) check(kfpq_sweep_set_tolerance(sweep.get(), *o.tolerance));
    if (o.strict) check(kfpq_sweep_set_strict(sweep.get(), *o.strict ? 1 : 0));
    const std::string format = o.format.value_or("csv");
    if (format != "csv" && format != "json") throw ConfigError("format: must be csv or json");
    check(kfpq_sweep_validate(sweep.get()));

    const auto start = std::chrono::steady_clock::now();
    kfpq_result *rraw = nullptr;
    check(kfpq_sweep_run(sweep.get(), &rraw));
    std::unique_ptr<kfpq_result, ResultDeleter> result(rraw);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    write_output(result.get(), format, o.out);
    print_timings(result.get());
    std::fprintf(stderr, "elapsed_s = %.3f\n", secs);
    return kfpq_result_passed(result.get()) ? 0 : kExitFailedChecks;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Decay and positivity checks for Kramers-Fokker-Planck type quadratic operators"};
    app.set_version_flag("--version", std::string(kfpq_version()));
    Options flags;
    std::string config_path, nu_text, t_text, pencil_text, alpha_text, out_text, format_text;
    double lambda1 = 0, tolerance = 0;
    int dims = 0;
    std::uint64_t seed = 0;
    bool strict = false;

    app.add_option("command", flags.command,
                   "norms, delta0, positivity, bargmann, resolvent, optimality, degenerate, subelliptic, verify-all")
        ->required();
    app.add_option("--config", config_path, "JSON file with the same keys as the long flags");
    auto *o_nu = app.add_option("--nu", nu_text, "comma separated list of nu values");
    auto *o_alpha = app.add_option("--alpha", alpha_text, "0 or pi2");
    auto *o_l1 = app.add_option("--lambda1", lambda1, "slope of the degenerate potential");
    auto *o_t = app.add_option("--t", t_text, "time grid min:max:count[:log|lin]");
    auto *o_dims = app.add_option("--dims", dims, "Galerkin truncation level");
    auto *o_pd = app.add_option("--pencil-dims", pencil_text, "comma separated pencil truncation levels");
    auto *o_out = app.add_option("--out", out_text, "output path (stdout if omitted)");
    auto *o_fmt = app.add_option("--format", format_text, "csv or json");
    auto *o_seed = app.add_option("--seed", seed, "seed for randomized probes");
    auto *o_tol = app.add_option("--tolerance", tolerance, "relative refinement tolerance for convergence flags");
    auto *o_strict = app.add_flag("--strict", strict, "fail on unconverged samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        Options o;
        if (!config_path.empty()) o = load_config(config_path);
        o.command = flags.command;
        if (*o_nu) o.nu = parse_nu_list(nu_text);
        if (*o_alpha) o.alpha = alpha_text;
        if (*o_l1) o.lambda1 = lambda1;
        if (*o_t) o.t = parse_grid(t_text);
        if (*o_dims) o.dims = dims;
        if (*o_pd) o.pencil_dims = parse_int_list("pencil_dims", pencil_text);
        if (*o_out) o.out = out_text;
        if (*o_fmt) o.format = format_text;
        if (*o_seed) o.seed = seed;
        if (*o_tol) o.tolerance = tolerance;
        if (*o_strict) o.strict = strict;
        return run(o);
    } catch (const ConfigError &e) {
        std::cerr << "kfpq: " << e.what() << "\n";
        return kExitConfig;
    } catch (const LibError &e) {
        std::cerr << "kfpq: " << kfpq_status_name(e.status) << ": " << e.message << "\n";
        return kfpq_status_is_config(e.status) ? kExitConfig : kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "kfpq: " << e.what() << "\n";
        return kExitNumerical;
    }
}
