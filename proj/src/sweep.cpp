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
#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bargmann.hpp"
#include "degenerate.hpp"
#include "exactnorms.hpp"
#include "galerkin.hpp"
#include "positivity.hpp"
#include "verify.hpp"

namespace kfpq::sweep {

namespace {

using symbols::Alpha;
using symbols::ModelParams;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::pair<const char *, Command> kCommands[] = {
    {"norms", Command::Norms},           {"delta0", Command::Delta0},         {"positivity", Command::Positivity},
    {"bargmann", Command::Bargmann},     {"resolvent", Command::Resolvent},   {"optimality", Command::Optimality},
    {"degenerate", Command::Degenerate}, {"subelliptic", Command::Subelliptic}, {"verify-all", Command::VerifyAll},
};

[[noreturn]] void config_error(const std::string &field, const std::string &msg) {
    fail(ErrorCode::Config, field + ": " + msg);
}

Column real(const char *n) { return {n, ColumnKind::Real, false}; }
Column integer(const char *n) { return {n, ColumnKind::Int, false}; }
Column flag(const char *n) { return {n, ColumnKind::Flag, false}; }
Column text(const char *n) { return {n, ColumnKind::Text, false}; }

Table table(const char *name, std::vector<Column> cols) {
    Table t;
    t.name = name;
    t.columns = std::move(cols);
    return t;
}

double rel(double o, double a) { return (a == 0.0 || !std::isfinite(a)) ? kNaN : std::abs(o - a) / std::abs(a); }
double b01(bool b) { return b ? 1.0 : 0.0; }
std::string alpha_name(Alpha a) { return a == Alpha::Zero ? "0" : "pi2"; }

Alpha default_alpha(Command c) { return c == Command::Bargmann ? Alpha::HalfPi : Alpha::Zero; }
Alpha alpha_of(const Config &c) { return c.alpha_set ? c.alpha : default_alpha(c.command); }

std::vector<double> default_nus(Command c) {
    switch (c) {
    case Command::Resolvent: return {1e2, 1e4, 1e6};
    case Command::Optimality: return {std::exp(9.0), std::exp(12.0)};
    case Command::Bargmann: return {2.0};
    case Command::Degenerate: return {};
    default: return {1.0};
    }
}

TGrid default_grid(Command c) {
    switch (c) {
    case Command::Norms: return {0.1, 5.0, 20, true};
    case Command::Delta0: return {0.05, 3.0, 20, true};
    case Command::Positivity: return {0.05, 3.0, 8, true};
    case Command::Bargmann: return {0.05, 5.0, 12, true};
    case Command::Degenerate: return {0.5, 3.0, 6, false};
    case Command::Subelliptic: return {0.25, 3.0, 5, true};
    default: return {};
    }
}

bool uses_t(Command c) {
    return c != Command::Resolvent && c != Command::Optimality && c != Command::VerifyAll;
}

std::vector<double> nus_of(const Config &c) {
    std::vector<double> v = c.nus.empty() ? default_nus(c.command) : c.nus;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<double> grid_of(const Config &c) { return (c.t_set ? c.t : default_grid(c.command)).points(); }
int dims_of(const Config &c) { return c.dims > 0 ? c.dims : 64; }

Result norms(const Config &c) {
    Result r;
    Table t = table("norm", {real("nu"), real("t"), real("analytic"), real("analytic_mu"), real("bound"), real("oracle"),
                             real("oracle_coarse"), real("rel_discrepancy"), real("refinement"), flag("converged_flag")});
    const std::vector<double> ts = grid_of(c);
    for (double nu : nus_of(c)) {
        const galerkin::DecayCurve d =
            galerkin::decay_curve(galerkin::Quantity::Norm, {-nu, 0.0}, ts, dims_of(c), c.strict, c.conv_tol);
        for (const galerkin::Sample &s : d.samples)
            t.rows.push_back({nu, s.t, s.analytic, exactnorms::semigroup_norm(s.t, nu).norm_mu, 1.0, s.oracle,
                              s.oracle_coarse, rel(s.oracle, s.analytic), s.rel_discrepancy, b01(s.converged)});
    }
    r.tables.push_back(std::move(t));
    return r;
}

Result delta0(const Config &c) {
    Result r;
    Table t = table("delta0", {real("nu"), text("alpha"), real("t"), real("analytic"), real("bound"), real("ratio"),
                               real("oracle"), real("oracle_minus"), real("rel_discrepancy"), flag("converged_flag")});
    const Alpha al = alpha_of(c);
    for (double nu : nus_of(c))
        for (double tt : grid_of(c)) {
            const ModelParams p = ModelParams::make(nu, al);
            const double d0 = positivity::delta0(tt, p), b = nu * tt * tt * tt / 12.0;
            double op = kNaN, om = kNaN;
            try {
                op = positivity::delta0_numeric(tt, p, 1);
                om = positivity::delta0_numeric(tt, p, -1);
            } catch (const Error &e) {
                if (c.strict) throw;
            }
            const bool ok = std::isfinite(op) && std::isfinite(om) && std::abs(op - om) <= 1e-6 * std::max(op, om);
            t.rows.push_back({nu, alpha_name(al), tt, d0, b, d0 / b, op, om, rel(op, d0), b01(ok)});
        }
    r.tables.push_back(std::move(t));
    return r;
}

Result positivity_table(const Config &c) {
    Result r;
    Table t = table("positivity", {real("nu"), text("alpha"), real("t"), integer("sign"), real("delta_fraction"),
                                   real("delta"), real("analytic"), real("bound"), real("oracle"), real("rel_discrepancy"),
                                   flag("positive_flag"), flag("converged_flag")});
    const Alpha al = alpha_of(c);
    for (double nu : nus_of(c))
        for (double tt : grid_of(c)) {
            const ModelParams p = ModelParams::make(nu, al);
            const double d0 = positivity::delta0(tt, p);
            for (double frac : {0.0, 0.5, 1.0})
                for (int sg : {1, -1}) {
                    const double d = frac * d0;
                    const positivity::PositivityReport rep = positivity::report(tt, d, p, sg);
                    const Mat2 m = positivity::hermitian_difference_direct(tt, d, p, sg);
                    const double o = Eigen::SelfAdjointEigenSolver<Mat2>(Mat2(0.5 * (m + m.adjoint()))).eigenvalues()(0);
                    // relative to the spectral scale, the small eigenvalue vanishes at delta0
                    const double scale = std::max(std::abs(rep.max_eigenvalue), std::abs(rep.min_eigenvalue));
                    t.rows.push_back({nu, alpha_name(al), tt, double(sg), frac, d, rep.min_eigenvalue, 0.0, o,
                                      scale > 0.0 ? std::abs(o - rep.min_eigenvalue) / scale : kNaN, b01(rep.is_positive),
                                      1.0});
                }
        }
    r.tables.push_back(std::move(t));
    return r;
}

Result bargmann_tables(const Config &c) {
    Result r;
    Table q = table("bargmann", {real("nu"), real("t"), real("analytic"), real("bound"), real("oracle"),
                                 real("oracle_unstructured"), real("lambda_minus"), real("lambda_minus_argsh"),
                                 real("rel_discrepancy"), flag("converged_flag")});
    Table g = table("bargmann_regimes", {real("nu"), real("c_small"), real("c_large"), real("literal_large"),
                                         real("chain_large")});
    Table rem = table("remainder", {real("nu"), real("t"), real("analytic"), real("bound"), real("oracle"),
                                    real("oracle_coarse"), real("rel_discrepancy"), real("refinement"),
                                    flag("converged_flag")});
    const std::vector<double> ts = grid_of(c);
    for (double nu : nus_of(c)) {
        const ModelParams p = ModelParams::make(nu, Alpha::HalfPi);
        const bargmann::RegimeFit f = bargmann::quotient_regimes({nu});
        g.rows.push_back({nu, f.c_small, f.c_large, f.literal_large, f.chain_large});
        const double seam = 4.0 / p.r1();
        for (double tt : ts) {
            const bargmann::WeightedQuotient w = bargmann::quotient(tt, p);
            const bargmann::GramEigen e = bargmann::gram_eigenvalues(tt, p);
            // fitted-constant envelope of 2 c0 / Q_t in the two regimes
            const double env = 2.0 * bargmann::kC0 *
                               (tt <= seam ? f.c_small / (nu * tt * tt * tt) : f.c_large * std::exp(-tt));
            const double o = bargmann::sup_radial(tt, p), ou = bargmann::sup_unstructured(tt, p, c.seed);
            const bool ok = rel(o, w.sup_value) <= 1e-6 && rel(ou, w.sup_value) <= 1e-6;
            q.rows.push_back({nu, tt, w.sup_value, env, o, ou, e.lambda_minus, e.lambda_minus_argsh, rel(o, w.sup_value),
                              b01(ok)});
        }
        if (nu > 1.0) {
            const galerkin::DecayCurve d = galerkin::decay_curve(galerkin::Quantity::AqStarRemainder, {nu, 0.0}, ts,
                                                                 dims_of(c), c.strict, c.conv_tol);
            for (const galerkin::Sample &s : d.samples)
                rem.rows.push_back({nu, s.t, s.analytic, s.bound, s.oracle, s.oracle_coarse, kNaN, s.rel_discrepancy,
                                    b01(s.converged)});
        }
    }
    r.tables.push_back(std::move(q));
    r.tables.push_back(std::move(g));
    r.tables.push_back(std::move(rem));
    return r;
}

Result resolvent(const Config &c) {
    Result r;
    Table t = table("resolvent", {real("nu"), real("analytic"), real("bound"), real("oracle"), real("rel_discrepancy"),
                                  real("c_ratio"), real("abs_err"), real("oracle_abs_err"), flag("converged_flag")});
    for (double nu : nus_of(c)) {
        const exactnorms::ResolventResult a = exactnorms::resolvent_bound(nu);
        double oe = 0.0;
        const double o = exactnorms::resolvent_integral_mu(nu, oe);
        t.rows.push_back({nu, a.integral, a.log_bound, o, rel(o, a.integral), a.c_ratio, a.abs_err, oe, 1.0});
    }
    r.tables.push_back(std::move(t));
    return r;
}

Result optimality(const Config &c) {
    Result r;
    Table t = table("optimality", {real("nu"), real("L"), real("overlap"), real("x0_norm_sq"), real("u_norm_sq_lower"),
                                   real("u_norm_sq_exact"), real("op_bound_sq"), real("analytic"), real("bound"),
                                   real("scaled_bound"), real("oracle"), real("rel_discrepancy"), real("refinement"),
                                   flag("converged_flag")});
    for (double nu : nus_of(c)) {
        const exactnorms::OptimalityWitness w = exactnorms::optimality_witness(nu);
        const double analytic = (w.op_bound_sq + nu * w.x0_norm_sq) / w.u_norm_sq_exact;
        double o = kNaN, refine = kNaN;
        try {
            const exactnorms::WitnessNumeric g = exactnorms::witness_rayleigh_numeric(nu);
            o = g.rayleigh;
            refine = g.refinement_change;
        } catch (const Error &e) {
            if (c.strict || e.code() != ErrorCode::GridUnderResolved) throw;
        }
        t.rows.push_back({nu, w.L, w.overlap, w.x0_norm_sq, w.u_norm_sq_lower, w.u_norm_sq_exact, w.op_bound_sq, analytic,
                          w.rayleigh_bound, w.rayleigh_bound * std::log(nu) / nu, o, rel(o, analytic), refine,
                          b01(refine <= c.conv_tol)});
    }
    r.tables.push_back(std::move(t));
    return r;
}

Result degenerate_tables(const Config &c) {
    Result r;
    const std::vector<double> ts = grid_of(c);
    const double l1 = c.lambda1;
    auto curve_table = [&](const char *name, galerkin::Quantity q) {
        Table t = table(name, {real("lambda1"), real("t"), real("analytic"), real("bound"), real("oracle"),
                               real("oracle_coarse"), real("rel_discrepancy"), real("refinement"), flag("converged_flag")});
        const galerkin::DecayCurve d = galerkin::decay_curve(q, {0.0, l1}, ts, dims_of(c), c.strict, c.conv_tol);
        for (const galerkin::Sample &s : d.samples)
            t.rows.push_back({l1, s.t, s.analytic, s.bound, s.oracle, s.oracle_coarse, rel(s.oracle, s.analytic),
                              s.rel_discrepancy, b01(s.converged)});
        return t;
    };
    Table f = table("fiber_sup", {real("lambda1"), real("t"), real("analytic"), real("bound"), real("oracle"),
                                  real("rel_discrepancy"), real("b_sq"), flag("converged_flag")});
    for (double tt : ts) {
        const double t3 = tt * tt * tt;
        const degenerate::FiberSup a = degenerate::fiber_sup(tt, l1), n = degenerate::fiber_sup_numeric(tt, l1);
        f.rows.push_back({l1, tt, t3 * a.value, degenerate::F(tt), t3 * n.value, rel(n.value, a.value), a.b_sq, 1.0});
    }
    r.tables.push_back(std::move(f));
    r.tables.push_back(curve_table("degenerate_weight", galerkin::Quantity::DegenerateWeight));
    r.tables.push_back(curve_table("degenerate_Dq", galerkin::Quantity::DegenerateDq));
    return r;
}

Result subelliptic(const Config &c) {
    Result r;
    Table d = table("Dq", {real("nu"), text("alpha"), real("lambda1"), real("t"), real("analytic"), real("bound"),
                           real("oracle"), real("oracle_coarse"), real("rel_discrepancy"), real("refinement"),
                           flag("converged_flag")});
    Table p = table("pencil", {real("nu"), text("alpha"), integer("dims"), real("c"), real("A")});
    const Alpha al = alpha_of(c);
    const std::vector<double> ts = grid_of(c);
    for (double nu : nus_of(c)) {
        const double curv = al == Alpha::Zero ? -nu : nu;
        const galerkin::DecayCurve dc =
            galerkin::decay_curve(galerkin::Quantity::Dq, {curv, c.lambda1}, ts, dims_of(c), c.strict, c.conv_tol);
        for (const galerkin::Sample &s : dc.samples)
            d.rows.push_back({nu, alpha_name(al), c.lambda1, s.t, s.analytic, s.bound, s.oracle, s.oracle_coarse, kNaN,
                              s.rel_discrepancy, b01(s.converged)});
        // the slope is translated away, so the pencil is taken at lambda1 = 0
        for (int n : c.pencil_dims) {
            const galerkin::SubellipticResult s = galerkin::subelliptic_constant({curv, 0.0}, n);
            p.rows.push_back({nu, alpha_name(al), double(n), s.c, s.A});
        }
    }
    r.tables.push_back(std::move(d));
    r.tables.push_back(std::move(p));
    return r;
}

Result verify_all(const Config &c) {
    Result r;
    Table t = table("verify", {integer("criterion"), text("name"), flag("passed"), real("runtime_limit_s"),
                               text("metrics"), text("error"), {"elapsed_s", ColumnKind::Real, true}});
    verify::Options o;
    o.seed = c.seed;
    o.galerkin_dims = dims_of(c);
    for (const verify::CriterionResult &cr : verify::run_all(o)) {
        t.rows.push_back({double(cr.id), cr.name, b01(cr.passed()), cr.runtime_limit_s, cr.metrics_text(), cr.error,
                          cr.elapsed_s});
        r.passed = r.passed && cr.passed();
    }
    r.tables.push_back(std::move(t));
    return r;
}

} // namespace

Command parse_command(const std::string &name) {
    for (const auto &[n, c] : kCommands)
        if (name == n) return c;
    config_error("command", "unknown command '" + name + "'");
}

std::string command_name(Command c) {
    for (const auto &[n, k] : kCommands)
        if (k == c) return n;
    return "?";
}

std::vector<double> TGrid::points() const {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) {
        if (count == 1) {
            v.push_back(tmin);
            break;
        }
        const double f = double(i) / (count - 1);
        v.push_back(log ? tmin * std::pow(tmax / tmin, f) : tmin + f * (tmax - tmin));
    }
    return v;
}

void validate(const Config &c) {
    for (double nu : c.nus)
        if (!std::isfinite(nu) || !(nu > 0.0)) config_error("nu", "values must be finite and > 0");
    if (c.command == Command::Degenerate && !c.nus.empty()) config_error("nu", "degenerate has no curvature parameter");
    const std::vector<double> nus = nus_of(c);
    if (c.command == Command::Bargmann)
        for (double nu : nus)
            if (!(nu > 0.25)) config_error("nu", "bargmann requires nu > 1/4");
    if (c.command == Command::Optimality)
        for (double nu : nus)
            if (!(nu > std::exp(8.0))) config_error("nu", "optimality requires nu > e^8");
    if (c.t_set) {
        if (!uses_t(c.command)) config_error("t", command_name(c.command) + " takes no t grid");
        if (c.t.count < 1) config_error("t", "empty grid (count must be >= 1)");
        if (!std::isfinite(c.t.tmin) || !std::isfinite(c.t.tmax) || !(c.t.tmin > 0.0))
            config_error("t", "min must be finite and > 0");
        if (!(c.t.tmax >= c.t.tmin)) config_error("t", "max must be >= min");
    }
    if (c.dims != 0 && c.dims < 8) config_error("dims", "must be >= 8");
    for (int n : c.pencil_dims)
        if (n < 8) config_error("pencil_dims", "must be >= 8");
    if (c.pencil_dims.empty()) config_error("pencil_dims", "empty list");
    if (!(c.conv_tol > 0.0) || !std::isfinite(c.conv_tol)) config_error("tolerance", "must be finite and > 0");
    if (!std::isfinite(c.lambda1)) config_error("lambda1", "must be finite");
    const bool alpha0_only =
        c.command == Command::Norms || c.command == Command::Resolvent || c.command == Command::Optimality;
    if (c.alpha_set && alpha0_only && c.alpha != Alpha::Zero)
        config_error("alpha", command_name(c.command) + " is defined for alpha = 0");
    if (c.alpha_set && c.command == Command::Bargmann && c.alpha != Alpha::HalfPi)
        config_error("alpha", "bargmann is defined for alpha = pi/2");
}

Result run(const Config &c) {
    validate(c);
    Result r;
    switch (c.command) {
    case Command::Norms: r = norms(c); break;
    case Command::Delta0: r = delta0(c); break;
    case Command::Positivity: r = positivity_table(c); break;
    case Command::Bargmann: r = bargmann_tables(c); break;
    case Command::Resolvent: r = resolvent(c); break;
    case Command::Optimality: r = optimality(c); break;
    case Command::Degenerate: r = degenerate_tables(c); break;
    case Command::Subelliptic: r = subelliptic(c); break;
    case Command::VerifyAll: r = verify_all(c); break;
    }
    r.command = c.command;
    return r;
}

} // namespace kfpq::sweep
