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
// Acceptance run: one PASS/FAIL line per criterion.
//   criteria 1-10 run in process through the C API (verify-all sweep)
//   criterion 11 runs the kfpq executable twice and compares the artifacts byte for byte
// usage: kfpq_acceptance <path-to-kfpq> [workdir]
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "kfpq/kfpq.h"

namespace {

constexpr int kCriteria = 10;
constexpr double kReproRuntimeLimit = 1200.0; // two verify-all runs

struct Row {
    int id = 0;
    std::string name, metrics, error;
    bool passed = false;
    double limit = 0, elapsed = 0;
};

std::FILE *g_report = nullptr;

// one line to stdout and to the report file
void report(const char *fmt, ...) {
    std::va_list ap;
    va_start(ap, fmt);
    std::va_list aq;
    va_copy(aq, ap);
    std::vfprintf(stdout, fmt, ap);
    std::fflush(stdout);
    if (g_report) std::vfprintf(g_report, fmt, aq);
    va_end(aq);
    va_end(ap);
}

size_t column(const kfpq_result *r, const char *name) {
    for (size_t c = 0; c < kfpq_result_column_count(r, 0); ++c)
        if (std::string(kfpq_result_column_name(r, 0, c)) == name) return c;
    return SIZE_MAX;
}

double real_at(const kfpq_result *r, size_t row, size_t c) {
    double v = NAN;
    if (c != SIZE_MAX) kfpq_result_real(r, 0, row, c, &v);
    return v;
}

std::string text_at(const kfpq_result *r, size_t row, size_t c) {
    const char *s = "";
    if (c != SIZE_MAX) kfpq_result_text(r, 0, row, c, &s);
    return s;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string &exe, const std::filesystem::path &out, const std::filesystem::path &err) {
    const std::string cmd = "\"" + exe + "\" verify-all --seed 1 --out \"" + out.string() + "\" 2> \"" + err.string() + "\"";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// passed flags of the CSV artifact, in criterion order
std::vector<int> csv_flags(const std::string &csv) {
    std::vector<int> flags;
    std::istringstream in(csv);
    std::string line;
    int passed_col = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f;
        std::string cell;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') quoted = !quoted;
            else if (ch == ',' && !quoted) f.push_back(std::move(cell)), cell.clear();
            else cell += ch;
        }
        f.push_back(cell);
        if (passed_col < 0) {
            for (size_t i = 0; i < f.size(); ++i)
                if (f[i] == "passed") passed_col = int(i);
            if (passed_col < 0) return {};
            continue;
        }
        if (size_t(passed_col) < f.size()) flags.push_back(f[passed_col] == "1" ? 1 : 0);
    }
    return flags;
}

} // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-kfpq> [workdir]\n", argv[0]);
        return 2;
    }
    const std::string exe = argv[1];
    const std::filesystem::path work =
        argc > 2 ? std::filesystem::path(argv[2]) : std::filesystem::temp_directory_path() / "kfpq_acceptance";
    std::filesystem::create_directories(work);
    g_report = std::fopen((work / "acceptance_report.txt").string().c_str(), "w");

    int failures = 0;
    std::vector<int> in_process(kCriteria, 0);

    kfpq_sweep *sweep = nullptr;
    kfpq_result *res = nullptr;
    kfpq_status st = kfpq_sweep_create("verify-all", &sweep);
    if (st == KFPQ_OK) st = kfpq_sweep_set_seed(sweep, 1);
    if (st == KFPQ_OK) st = kfpq_sweep_run(sweep, &res);
    kfpq_sweep_destroy(sweep);
    if (st != KFPQ_OK) {
        for (int id = 1; id <= kCriteria; ++id)
            report("FAIL criterion %d: verify-all did not run (%s: %s)\n", id, kfpq_status_name(st),
                        kfpq_last_error());
        failures = kCriteria;
    } else {
        const size_t c_id = column(res, "criterion"), c_name = column(res, "name"), c_pass = column(res, "passed"),
                     c_lim = column(res, "runtime_limit_s"), c_met = column(res, "metrics"),
                     c_err = column(res, "error"), c_el = column(res, "elapsed_s");
        std::vector<Row> rows;
        for (size_t i = 0; i < kfpq_result_row_count(res, 0); ++i) {
            Row r;
            r.id = int(real_at(res, i, c_id));
            r.name = text_at(res, i, c_name);
            r.passed = real_at(res, i, c_pass) == 1.0;
            r.limit = real_at(res, i, c_lim);
            r.elapsed = real_at(res, i, c_el);
            r.metrics = text_at(res, i, c_met);
            r.error = text_at(res, i, c_err);
            rows.push_back(r);
        }
        kfpq_result_destroy(res);
        for (int id = 1; id <= kCriteria; ++id) {
            const Row *r = nullptr;
            for (const auto &x : rows)
                if (x.id == id) r = &x;
            if (!r) {
                report("FAIL criterion %d: missing from verify-all\n", id);
                ++failures;
                continue;
            }
            in_process[id - 1] = r->passed ? 1 : 0;
            failures += r->passed ? 0 : 1;
            report("%s criterion %d: %s elapsed=%.2fs limit=%.0fs %s%s%s\n", r->passed ? "PASS" : "FAIL", id,
                        r->name.c_str(), r->elapsed, r->limit, r->metrics.c_str(), r->error.empty() ? "" : " error=",
                        r->error.c_str());
        }
    }

    // criterion 11
    const auto start = std::chrono::steady_clock::now();
    const auto a = work / "verify_a.csv", b = work / "verify_b.csv";
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    const int rc_a = run_cli(exe, a, work / "verify_a.err");
    const int rc_b = run_cli(exe, b, work / "verify_b.err");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string ta = slurp(a), tb = slurp(b);
    const std::vector<int> flags = csv_flags(ta);
    const bool identical = !ta.empty() && ta == tb;
    const bool complete = flags.size() == size_t(kCriteria);
    const bool agree = complete && flags == in_process;
    const bool ok = rc_a == 0 && rc_b == 0 && identical && complete && agree && secs < kReproRuntimeLimit;
    failures += ok ? 0 : 1;
    report("%s criterion 11: verify-all reproducible exit=%d,%d identical=%d bytes=%zu criteria=%zu "
                "agrees_in_process=%d elapsed=%.2fs limit=%.0fs\n",
                ok ? "PASS" : "FAIL", rc_a, rc_b, identical ? 1 : 0, ta.size(), flags.size(), agree ? 1 : 0, secs,
                kReproRuntimeLimit);
    if (g_report) std::fclose(g_report);
    return failures == 0 ? 0 : 1;
}
