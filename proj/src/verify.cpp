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
#include "verify.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "bargmann.hpp"
#include "biquat.hpp"
#include "degenerate.hpp"
#include "exactnorms.hpp"
#include "galerkin.hpp"
#include "positivity.hpp"
#include "symbols.hpp"

namespace kfpq::verify {

namespace {

using symbols::Alpha;
using symbols::ModelParams;

const Alpha kAlphas[] = {Alpha::Zero, Alpha::HalfPi};

// max that keeps NaN, so a non-finite residual fails the check
double worst(double acc, double x) { return (std::isnan(acc) || std::isnan(x)) ? std::nan("") : std::max(acc, x); }

template <class M> double mx(const M &m) { return m.cwiseAbs().maxCoeff(); }

// Taylor series with scaling and squaring; independent of the closed forms.
template <class M> M series_expm(const M &a) {
    const double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    if (nrm > 0.5) s = int(std::ceil(std::log2(nrm / 0.5)));
    const M b = a / std::pow(2.0, s);
    M term = M::Identity(a.rows(), a.cols());
    M sum = term;
    for (int k = 1; k < 40; ++k) {
        term = (term * b) / double(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

template <class F> double qagi(F f) {
    struct Ctx {
        F *fn;
    } ctx{&f};
    gsl_function gf;
    gf.function = [](double x, void *c) { return (*static_cast<Ctx *>(c)->fn)(x); };
    gf.params = &ctx;
    gsl_integration_workspace *ws = gsl_integration_workspace_alloc(1000);
    gsl_error_handler_t *old = gsl_set_error_handler_off();
    double r = 0.0, err = 0.0;
    const int status = gsl_integration_qagi(&gf, 1e-15, 1e-12, 1000, ws, &r, &err);
    gsl_set_error_handler(old);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS) fail(ErrorCode::QuadratureNotConverged, "verify: qagi did not converge");
    return r;
}

class Check {
  public:
    explicit Check(CriterionResult &r) : r_(r) {}
    void metric(const std::string &k, double v) { r_.metrics.push_back({k, v}); }
    // records the metric and whether lo <= v <= hi
    bool within(const std::string &k, double v, double lo, double hi) {
        metric(k, v);
        const bool ok = v >= lo && v <= hi;
        ok_ = ok_ && ok;
        return ok;
    }
    bool at_most(const std::string &k, double v, double hi) {
        return within(k, v, -std::numeric_limits<double>::infinity(), hi);
    }
    bool require(const std::string &k, bool cond) {
        metric(k, cond ? 1.0 : 0.0);
        ok_ = ok_ && cond;
        return cond;
    }
    bool ok() const { return ok_; }

  private:
    CriterionResult &r_;
    bool ok_ = true;
};

bool c1_biquaternion(const Options &o, Check &c) {
    std::mt19937_64 g(o.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rc = [&] {
        for (;;) {
            const cplx z(u(g), u(g));
            if (std::abs(z) <= 1.0) return 2.0 * z;
        }
    };
    double e_exp = 0.0, e_norm = 0.0;
    for (int n = 0; n < 200; ++n) {
        const biquat::Biquaternion w{rc(), rc(), rc(), rc()};
        const Mat2 f = biquat::to_matrix(w);
        e_exp = worst(e_exp, mx(Mat2(biquat::to_matrix(biquat::exp(w)) - series_expm(f))));
        const cplx det = f.determinant();
        e_norm = worst(e_norm, std::abs(biquat::norm(w) - det) / std::max(1.0, std::abs(det)));
    }
    c.at_most("exp_abs_err", e_exp, 1e-10);
    c.at_most("norm_det_rel_err", e_norm, 1e-12);
    return c.ok();
}

bool c2_hamilton(const Options &, Check &c) {
    double rel = 0.0, conj = 0.0, iso = 0.0;
    for (Alpha al : kAlphas) {
        const symbols::HamiltonBasis h = symbols::hamilton_basis(al);
        const ModelParams p = ModelParams::make(1.0, al);
        const Mat4 id = Mat4::Identity();
        for (const Mat4 *m : {&h.E, &h.I, &h.J, &h.K}) rel = worst(rel, mx(Mat4(*m * *m + id)));
        rel = worst(rel, mx(Mat4(h.I * h.J - h.K)));
        for (const Mat4 *m : {&h.I, &h.J, &h.K}) rel = worst(rel, mx(Mat4(h.E * *m - *m * h.E)));
        conj = worst(conj, mx(Mat4(h.E.conjugate() - h.E)));
        conj = worst(conj, mx(Mat4(h.I.conjugate() - h.I)));
        conj = worst(conj, mx(Mat4(h.J.conjugate() + p.phase2() * h.J)));
        conj = worst(conj, mx(Mat4(h.K.conjugate() + p.phase2() * h.K)));
        conj = worst(conj, mx(Mat4(h.sigma - (p.sin_alpha() * h.E + p.cos_alpha() * h.I))));
        for (int sg : {1, -1}) {
            const auto &T = h.T(sg);
            iso = worst(iso, mx(Mat2(T.adjoint() * T - Mat2::Identity())));
            iso = worst(iso, mx(Mat2(T.adjoint() * (kI * h.E) * T - double(sg) * Mat2::Identity())));
        }
    }
    c.at_most("quaternion_relations", rel, 1e-13);
    c.at_most("conjugations_sigma", conj, 1e-13);
    c.at_most("T_isometry", iso, 1e-13);
    return c.ok();
}

bool c3_flows(const Options &, Check &c) {
    double ek = 0.0, e0 = 0.0;
    for (Alpha al : kAlphas)
        for (double nu : {0.1, 1.0, 10.0}) {
            const ModelParams p = ModelParams::make(nu, al);
            const Mat4 hk = symbols::hamilton_map(symbols::hess_K(p));
            const Mat4 hq = symbols::hamilton_map(symbols::hess_Oq());
            for (int k = 1; k <= 30; ++k) {
                const double t = 0.1 * k;
                const Mat4 ref = Mat4(-kI * t * hk).exp();
                ek = worst(ek, mx(Mat4(symbols::kappa(t, p).matrix - ref)) / mx(ref));
            }
            for (int k = 0; k <= 10; ++k) {
                const double d = 0.1 * k;
                const Mat4 ref = Mat4(kI * d * hq).exp();
                e0 = worst(e0, mx(Mat4(symbols::kappa0(d, p).matrix - ref)) / mx(ref));
            }
        }
    c.at_most("kappa_rel_err", ek, 1e-9);
    c.at_most("kappa0_rel_err", e0, 1e-9);
    return c.ok();
}

bool c4_delta0(const Options &, Check &c) {
    double det = 0.0, det_abs = 0.0;
    bool positive = true;
    for (Alpha al : kAlphas)
        for (double nu : {0.5, 1.0, 4.0, 25.0})
            for (double t : {0.05, 0.3, 1.0, 2.0, 3.0}) {
                const ModelParams p = ModelParams::make(nu, al);
                const double d0 = positivity::delta0(t, p);
                for (int sg : {1, -1}) {
                    const positivity::PositivityReport r = positivity::report(t, d0, p, sg);
                    const double fro2 = positivity::hermitian_difference(t, d0, p, sg).squaredNorm();
                    det = worst(det, std::abs(r.det_closed) / (1.0 + fro2));
                    det_abs = worst(det_abs, std::abs(r.det_closed));
                    positive = positive && positivity::report(t, 0.0, p, sg).is_positive &&
                               positivity::report(t, 0.5 * d0, p, sg).is_positive;
                }
            }
    double lo = INFINITY, hi = -INFINITY;
    for (Alpha al : kAlphas)
        for (double nu : {0.5, 1.0, 4.0, 25.0, 1e4}) {
            const ModelParams p = ModelParams::make(nu, al);
            const double t = 1e-2 / (1.0 + std::sqrt(nu));
            const double ratio = positivity::delta0(t, p) / (nu * t * t * t / 12.0);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    c.at_most("det_at_delta0_scaled", det, 1e-8);
    c.metric("det_at_delta0_abs", det_abs);
    c.within("ratio_min", lo, 0.98, 1.02);
    c.within("ratio_max", hi, 0.98, 1.02);
    c.require("positive_at_0_and_half_delta0", positive);
    return c.ok();
}

bool c5_exact_norm(const Options &o, Check &c) {
    double route = 0.0;
    for (double nu : {0.5, 1.0, 10.0, 1e3})
        for (int k = 0; k <= 100; ++k) {
            const exactnorms::NormResult r = exactnorms::semigroup_norm(0.05 * k, nu);
            route = worst(route, std::abs(r.norm - r.norm_mu));
        }
    c.at_most("argsh_vs_mu", route, 1e-10);
    const galerkin::DecayCurve curve =
        galerkin::decay_curve(galerkin::Quantity::Norm, {-1.0, 0.0}, {0.5, 1.0, 2.0}, o.galerkin_dims);
    double rel = 0.0, refine = 0.0;
    for (const galerkin::Sample &s : curve.samples) {
        rel = worst(rel, std::abs(s.oracle - s.analytic) / s.analytic);
        refine = worst(refine, s.rel_discrepancy);
    }
    c.at_most("galerkin_rel_err", rel, 0.05);
    c.metric("galerkin_refinement", refine);
    c.require("galerkin_converged", curve.all_converged());
    return c.ok();
}

bool c6_resolvent(const Options &, Check &c) {
    double margin = 0.0;
    for (double nu : {1e2, 1e4, 1e6}) {
        const exactnorms::ResolventResult r = exactnorms::resolvent_bound(nu);
        margin = worst(margin, r.integral / r.log_bound);
    }
    double lo = INFINITY, hi = -INFINITY;
    for (int k = 0; k <= 24; ++k) {
        const double cr = exactnorms::resolvent_bound(std::pow(10.0, 2.0 + 0.25 * k)).c_ratio;
        lo = std::min(lo, cr);
        hi = std::max(hi, cr);
    }
    c.at_most("integral_over_bound", margin, 1.0);
    c.within("c_ratio_min", lo, 0.3, 2.5);
    c.within("c_ratio_max", hi, 0.3, 2.5);
    return c.ok();
}

// ||O_p phi_s||^2 by 2D quadrature in (q, p), phi_s = e^{-z^T G z / 2}/sqrt(pi)
double op_phi_quadrature(double s) {
    const double a = std::exp(2.0 * s), b = 1.0 / a;
    const double gd = 0.5 * (a + b), go = 0.5 * (a - b);
    return qagi([&](double q) {
        return qagi([&](double p) {
            const double gzp = go * q + gd * p;
            const double op = 0.5 * (gd - gzp * gzp + p * p);
            const double quad = gd * (q * q + p * p) + 2.0 * go * q * p;
            return op * op * std::exp(-quad) / kPi;
        });
    });
}

bool c7_optimality(const Options &, Check &c) {
    double overlap = 0.0, op = 0.0;
    double lo = INFINITY, hi = -INFINITY;
    for (double e : {9.0, 12.0, 16.0}) {
        const exactnorms::OptimalityWitness w = exactnorms::optimality_witness(std::exp(e));
        const double L = w.L;
        const double ix = qagi([L](double x) { return std::exp(-0.5 * (std::exp(2.0 * L) + 1.0) * x * x); });
        const double iy = qagi([L](double y) { return std::exp(-0.5 * (std::exp(-2.0 * L) + 1.0) * y * y); });
        overlap = worst(overlap, std::abs(ix * iy / kPi - w.overlap));
        const double scaled = w.rayleigh_bound * e / w.nu;
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
    }
    for (double s : {0.0, 0.25, 0.5, 0.75}) op = worst(op, std::abs(op_phi_quadrature(s) - exactnorms::op_phi_norm_sq(s)));
    c.at_most("overlap_err", overlap, 1e-8);
    c.at_most("op_phi_err", op, 1e-8);
    c.at_most("rayleigh_scaled_max", hi, 12.0);
    c.at_most("rayleigh_scaled_spread", hi / lo, 1.5);
    const double nu = std::exp(9.0);
    const exactnorms::OptimalityWitness w = exactnorms::optimality_witness(nu);
    const exactnorms::WitnessNumeric g = exactnorms::witness_rayleigh_numeric(nu);
    c.metric("grid_rayleigh", g.rayleigh);
    c.metric("closed_rayleigh", w.rayleigh_bound);
    c.at_most("grid_over_closed", g.rayleigh / w.rayleigh_bound, 1.2);
    return c.ok();
}

bool c8_bargmann(const Options &o, Check &c) {
    double forms = 0.0, lmin = INFINITY;
    for (double nu : {0.3, 1.0, 10.0, 1e3})
        for (int k = 1; k <= 100; ++k) {
            const bargmann::GramEigen g =
                bargmann::gram_eigenvalues(0.1 * k, ModelParams::make(nu, Alpha::HalfPi));
            forms = worst(forms, std::abs(g.lambda_minus - g.lambda_minus_argsh) / g.lambda_plus);
            lmin = std::min(lmin, g.lambda_minus);
        }
    double sup = 0.0;
    for (double nu : {0.5, 2.0, 30.0})
        for (double t : {0.05, 0.4, 1.5, 4.0}) {
            const ModelParams p = ModelParams::make(nu, Alpha::HalfPi);
            const double v = bargmann::quotient(t, p).sup_value;
            sup = worst(sup, std::abs(bargmann::sup_radial(t, p) - v) / v);
            sup = worst(sup, std::abs(bargmann::sup_unstructured(t, p, o.seed) - v) / v);
        }
    const bargmann::RegimeFit f = bargmann::quotient_regimes({1.0, 1e2, 1e4});
    c.at_most("lambda_minus_forms", forms, 1e-11);
    c.metric("lambda_minus_min", lmin);
    c.require("lambda_minus_gt_1", lmin > 1.0);
    c.at_most("sup_rel_err", sup, 1e-6);
    c.within("c_small", f.c_small, 0.0, 6.1);
    c.within("c_large", f.c_large, 0.0, 100.0);
    c.metric("literal_large_ratio", f.literal_large);
    c.at_most("chain_large_ratio", f.chain_large, 1.0);
    return c.ok();
}

bool c9_degenerate(const Options &, Check &c) {
    const degenerate::Richardson r = degenerate::F_at_zero();
    c.within("F0", r.value, 24.0 - 1e-6, 24.0 + 1e-6);
    double argmax = 0.0, over_F = 0.0, bt3 = 0.0;
    double first_violation = INFINITY;
    for (int i = 0; i < 200; ++i) {
        const double t = 5.0 * std::pow(1e-3, double(i) / 199);
        const degenerate::FiberSup a = degenerate::fiber_sup(t, 0.0);
        const degenerate::FiberSup n = degenerate::fiber_sup_numeric(t, 0.0);
        argmax = worst(argmax, std::abs(n.b_sq - a.b_sq) / a.b_sq);
        const double ratio = n.value * t * t * t / degenerate::F(t);
        if (t <= 1.0) over_F = worst(over_F, ratio);
        if (ratio > 1.0) first_violation = std::min(first_violation, t);
        bt3 = worst(bt3, degenerate::decay_bound_degenerate(t, 0.0) * t * t * t);
    }
    c.at_most("argmax_rel_err", argmax, 1e-8);
    c.at_most("sup_over_F_t_le_1", over_F, 1.0 + 1e-12);
    c.metric("sup_over_F_first_violation_t", first_violation);
    c.at_most("bound_t3_max", bt3, 300.0);
    return c.ok();
}

bool c10_galerkin(const Options &o, Check &c) {
    using galerkin::Quantity;
    const std::vector<double> grid{0.25, 0.5, 1.0, 2.0, 3.0};
    auto record = [&](const std::string &tag, const galerkin::DecayCurve &d) {
        int conv = 0;
        double ratio = 0.0;
        for (const galerkin::Sample &s : d.samples)
            if (s.converged) {
                ++conv;
                ratio = worst(ratio, s.oracle / s.bound);
            }
        c.metric(tag + "_converged", conv);
        c.require(tag + "_holds", d.bound_holds() && conv >= 3);
        c.metric(tag + "_max_ratio", ratio);
    };
    auto label = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%g", v);
        return std::string(b);
    };
    for (double cv : {-1.0, 1.0, 4.0})
        for (double l1 : {0.0, 1.0})
            record("Dq_c" + label(cv) + "_l" + label(l1), galerkin::decay_curve(Quantity::Dq, {cv, l1}, grid, o.galerkin_dims));
    for (double l1 : {0.0, 1.0}) {
        const std::vector<double> dg{0.5, 1.0, 2.0, 3.0};
        record("degDq_l" + label(l1), galerkin::decay_curve(Quantity::DegenerateDq, {0.0, l1}, dg, o.galerkin_dims));
        record("degW_l" + label(l1), galerkin::decay_curve(Quantity::DegenerateWeight, {0.0, l1}, dg, o.galerkin_dims));
    }
    for (double cv : {1.0, -1.0}) {
        const double a = galerkin::subelliptic_constant({cv, 0.0}, 16).c;
        const double b = galerkin::subelliptic_constant({cv, 0.0}, 24).c;
        c.within("pencil_c" + label(cv) + "_d16", a, 1e-300, INFINITY);
        c.within("pencil_c" + label(cv) + "_d24", b, 1e-300, INFINITY);
        c.at_most("pencil_c" + label(cv) + "_spread", std::abs(a - b) / std::max(a, b), 0.3);
    }
    return c.ok();
}

struct Entry {
    const char *name;
    double limit_s;
    bool (*fn)(const Options &, Check &);
};

const Entry kEntries[kCriteria] = {
    {"biquaternion algebra", 1.0, c1_biquaternion},
    {"Hamilton algebra", 1.0, c2_hamilton},
    {"flow closed forms", 5.0, c3_flows},
    {"delta0 and positivity", 10.0, c4_delta0},
    {"exact semigroup norm", 180.0, c5_exact_norm},
    {"resolvent log bound", 10.0, c6_resolvent},
    {"optimality witness", 120.0, c7_optimality},
    {"Bargmann quotient", 30.0, c8_bargmann},
    {"degenerate case", 10.0, c9_degenerate},
    {"decay curves and subelliptic pencil", 600.0, c10_galerkin},
};

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char b[64];
    auto res = std::to_chars(b, b + sizeof b, v, std::chars_format::general, 17);
    return std::string(b, res.ptr);
}

} // namespace

std::string CriterionResult::metrics_text() const {
    std::string s;
    for (const Metric &m : metrics) {
        if (!s.empty()) s += ';';
        s += m.key + '=' + fmt17(m.value);
    }
    return s;
}

CriterionResult run_criterion(int id, const Options &opt) {
    if (id < 1 || id > kCriteria) fail(ErrorCode::InvalidParameter, "verify: criterion id out of range");
    const Entry &e = kEntries[id - 1];
    CriterionResult r;
    r.id = id;
    r.name = e.name;
    r.runtime_limit_s = e.limit_s;
    const auto t0 = std::chrono::steady_clock::now();
    Check c(r);
    try {
        r.checks_pass = e.fn(opt, c);
    } catch (const Error &err) {
        r.checks_pass = false;
        r.error = std::string(error_name(err.code())) + ": " + err.what();
    }
    r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_all(const Options &opt) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id, opt));
    return out;
}

} // namespace kfpq::verify
