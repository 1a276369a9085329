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
#include "exactnorms.hpp"

#include <limits>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "biquat.hpp"

namespace kfpq::exactnorms {

namespace {

void require_positive(double nu, const char *op) {
    if (!(nu > 0.0) || !std::isfinite(nu)) fail(ErrorCode::InvalidParameter, std::string(op) + ": nu must be > 0");
}

// GSL adaptive quadrature over [a, b]; throws instead of calling the GSL abort handler.
template <class F> double qag(F f, double a, double b, double tol, double &abserr, const char *op) {
    gsl_function gf;
    gf.function = [](double x, void *ctx) { return (*static_cast<F *>(ctx))(x); };
    gf.params = &f;
    gsl_integration_workspace *ws = gsl_integration_workspace_alloc(2000);
    gsl_error_handler_t *old = gsl_set_error_handler_off();
    double r = 0.0;
    const int status = gsl_integration_qag(&gf, a, b, 1e-14, 1e-12, 2000, GSL_INTEG_GAUSS61, ws, &r, &abserr);
    gsl_set_error_handler(old);
    gsl_integration_workspace_free(ws);
    if ((status != GSL_SUCCESS && abserr > tol) || !std::isfinite(r))
        fail(ErrorCode::QuadratureNotConverged, std::string(op) + ": adaptive quadrature stalled, error " + std::to_string(abserr));
    return r;
}

} // namespace

double flow_S(double t, double nu) {
    const double n1 = std::sqrt(4.0 * nu + 1.0);
    return std::sinh(0.5 * t * n1) / n1;
}

NormResult semigroup_norm(double t, double nu) {
    require_positive(nu, "semigroup_norm");
    if (!(t >= 0.0)) fail(ErrorCode::InvalidParameter, "semigroup_norm: t must be >= 0");
    NormResult r;
    r.t = t;
    const double S = flow_S(t, nu);
    r.norm = std::exp(-std::asinh(S));

    // conj(kappa)^{-1} kappa = e^{itE} (a + bI - cJ)(a + bI + cJ), I, J acting as quaternion units
    using biquat::Biquaternion;
    const double n1 = std::sqrt(4.0 * nu + 1.0);
    const cplx a = std::cosh(0.5 * t * n1), b = kI * S, c = 2.0 * kI * std::sqrt(nu) * S;
    double big = std::numeric_limits<double>::infinity();
    try {
        const Biquaternion v = Biquaternion{a, b, -c, 0.0} * Biquaternion{a, b, c, 0.0};
        const double x = v.a.real();
        r.n_v = (-biquat::norm(v.vector_part())).real();
        const double root = std::sqrt(std::max(r.n_v, 0.0));
        // (x - root)(x + root) = N(a+bI-cJ) N(a+bI+cJ) = 1; the small root is taken from the product
        big = x + root;
    } catch (const Error &e) {
        // the product overflows first; only the mu route is lost
        if (e.code() != ErrorCode::NonFinite) throw;
        r.n_v = std::numeric_limits<double>::quiet_NaN();
    }
    if (std::isfinite(big)) {
        r.mu1 = std::exp(-t) / big;
        r.mu2 = std::exp(-t) * big;
        r.norm_mu = 1.0 / std::sqrt(big);
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.mu1 = r.mu2 = nan;
        r.norm_mu = nan;
    }
    return r;
}

ResolventResult resolvent_bound(double nu) {
    require_positive(nu, "resolvent_bound");
    const double n1 = std::sqrt(4.0 * nu + 1.0);
    // past t n1/2 = 30 the integrand is below n1 e^{-t n1/2}/(1 - e^{-2})
    const double T = 60.0 / n1;
    const double tail = 2.0 / (1.0 - std::exp(-2.0)) * std::exp(-30.0);
    auto f = [nu](double t) { return std::exp(-std::asinh(flow_S(t, nu))); };
    double err = 0.0;
    const double split = std::min(T, std::log(std::max(nu, 2.0)) / n1);
    double e1 = 0.0, e2 = 0.0;
    const double head = qag(f, 0.0, split, 1e-8, e1, "resolvent_bound");
    const double body = qag(f, split, T, 1e-8, e2, "resolvent_bound");
    err = e1 + e2 + tail;
    if (err > 1e-8) fail(ErrorCode::QuadratureNotConverged, "resolvent_bound: error estimate above 1e-8");
    ResolventResult r;
    r.integral = head + body;
    r.abs_err = err;
    r.c_ratio = r.integral / (std::log(nu) / std::sqrt(nu));
    r.log_bound = 2.0 * (std::log(nu) / n1 + 1.0 / nu);
    return r;
}

double resolvent_integral_mu(double nu, double &abs_err) {
    require_positive(nu, "resolvent_integral_mu");
    // norm_mu is NaN only once x + r overflows, where the integrand is below e^{-170}
    auto f = [nu](double t) {
        const double v = semigroup_norm(t, nu).norm_mu;
        return std::isfinite(v) ? v : 0.0;
    };
    struct Ctx {
        decltype(f) *fn;
    } ctx{&f};
    gsl_function gf;
    gf.function = [](double x, void *c) { return (*static_cast<Ctx *>(c)->fn)(x); };
    gf.params = &ctx;
    gsl_integration_workspace *ws = gsl_integration_workspace_alloc(2000);
    gsl_error_handler_t *old = gsl_set_error_handler_off();
    double r = 0.0;
    const int status = gsl_integration_qagiu(&gf, 0.0, 1e-13, 1e-11, 2000, ws, &r, &abs_err);
    gsl_set_error_handler(old);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS || abs_err > 1e-8)
        fail(ErrorCode::QuadratureNotConverged, "resolvent_integral_mu: error estimate above 1e-8");
    return r;
}

OptimalityWitness optimality_witness(double nu) {
    if (!(nu > std::exp(8.0)) || !std::isfinite(nu))
        fail(ErrorCode::InvalidParameter, "optimality_witness: requires nu > e^8");
    OptimalityWitness w;
    w.nu = nu;
    const double L = 0.25 * std::log(nu);
    w.L = L;
    w.overlap = 1.0 / std::cosh(L);
    w.x0_norm_sq = 2.0 / (L * L) * (1.0 - w.overlap);
    // int_0^1 ds / ch s = 2 atan(tanh(1/2)), inner integral kept on [0, 1]
    const double sech01 = 2.0 * std::atan(std::tanh(0.5));
    w.u_norm_sq_lower = 2.0 / (L * L) * (0.5 * L) * sech01;
    double err = 0.0;
    w.u_norm_sq_exact = 2.0 / (L * L) * qag([L](double s) { return (L - s) / std::cosh(s); }, 0.0, L, 1e-12, err, "optimality_witness");
    w.op_bound_sq = std::sinh(4.0 * L) / (16.0 * L * L);
    w.rayleigh_bound = (w.op_bound_sq + nu * w.x0_norm_sq) / w.u_norm_sq_lower;
    return w;
}

namespace {

// Gauss-Legendre nodes on [0, L] from GSL.
void legendre(int n, double L, std::vector<double> &s, std::vector<double> &w) {
    gsl_integration_glfixed_table *tab = gsl_integration_glfixed_table_alloc(n);
    s.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(0.0, L, i, &s[i], &w[i], tab);
    gsl_integration_glfixed_table_free(tab);
}

// In x = (q+p)/sqrt2, y = (q-p)/sqrt2: phi_s = e^{-(e^{2s} x^2 + e^{-2s} y^2)/2}/sqrt(pi),
// X_0 = x d_x - y d_y and O_p phi_s = [(1-a^2) x^2 + (1-b^2) y^2 + a + b] phi_s / 4, a = e^{2s}, b = 1/a.
WitnessNumeric evaluate(double nu, const GridSpec &g) {
    const double L = 0.25 * std::log(nu);
    std::vector<double> s, w;
    legendre(g.ns, L, s, w);
    const double xmax = g.width, ymax = g.width * std::exp(L);
    const double hx = 2.0 * xmax / (g.nx - 1), hy = 2.0 * ymax / (g.ny - 1);
    Eigen::VectorXd xs(g.nx), ys(g.ny);
    for (int i = 0; i < g.nx; ++i) xs(i) = -xmax + i * hx;
    for (int j = 0; j < g.ny; ++j) ys(j) = -ymax + j * hy;

    Eigen::MatrixXd ex(g.ns, g.nx), ey(g.ns, g.ny);
    Eigen::VectorXd wa(g.ns), wb(g.ns), wab(g.ns), w1a(g.ns), w1b(g.ns);
    const double pref = 1.0 / (L * std::sqrt(kPi));
    for (int k = 0; k < g.ns; ++k) {
        const double a = std::exp(2.0 * s[k]), b = 1.0 / a;
        ex.row(k) = (-0.5 * a * xs.array().square()).exp().matrix().transpose();
        ey.row(k) = (-0.5 * b * ys.array().square()).exp().matrix().transpose();
        const double wk = w[k] * pref;
        wa(k) = wk * a;
        wb(k) = wk * b;
        wab(k) = wk * (a + b);
        w1a(k) = wk * (1.0 - a * a);
        w1b(k) = wk * (1.0 - b * b);
    }
    auto sum = [&](const Eigen::VectorXd &c) -> Eigen::MatrixXd { return ex.transpose() * c.asDiagonal() * ey; };
    Eigen::VectorXd wk(g.ns);
    for (int k = 0; k < g.ns; ++k) wk(k) = w[k] * pref;
    const Eigen::MatrixXd U = sum(wk);
    const Eigen::ArrayXXd X2 = xs.array().square().replicate(1, g.ny);
    const Eigen::ArrayXXd Y2 = ys.array().square().transpose().replicate(g.nx, 1);
    const Eigen::ArrayXXd XU = -X2 * sum(wa).array() + Y2 * sum(wb).array();
    const Eigen::ArrayXXd OU = 0.25 * (X2 * sum(w1a).array() + Y2 * sum(w1b).array() + sum(wab).array());
    const double dA = hx * hy;
    WitnessNumeric r{};
    r.u_norm_sq = U.squaredNorm() * dA;
    r.x0_norm_sq = XU.square().sum() * dA;
    r.op_norm_sq = OU.square().sum() * dA;
    const double ku = (OU + std::sqrt(nu) * XU).square().sum() * dA;
    r.rayleigh = ku / r.u_norm_sq;
    return r;
}

} // namespace

WitnessNumeric witness_rayleigh_numeric(double nu, const GridSpec &grid) {
    if (!(nu > std::exp(8.0)) || !std::isfinite(nu))
        fail(ErrorCode::InvalidParameter, "witness_rayleigh_numeric: requires nu > e^8");
    if (grid.nx < 16 || grid.ny < 16 || grid.ns < 4 || !(grid.width > 0.0))
        fail(ErrorCode::InvalidParameter, "witness_rayleigh_numeric: grid too small");
    WitnessNumeric coarse = evaluate(nu, grid);
    GridSpec fine = grid;
    fine.nx = 2 * grid.nx;
    fine.ny = 2 * grid.ny;
    fine.ns = 2 * grid.ns;
    fine.width = grid.width * 1.25;
    const WitnessNumeric f = evaluate(nu, fine);
    coarse.refinement_change = std::abs(f.rayleigh - coarse.rayleigh) / std::abs(f.rayleigh);
    if (!(coarse.refinement_change <= 0.01))
        fail(ErrorCode::GridUnderResolved, "witness_rayleigh_numeric: refinement moved the quotient by " +
                                               std::to_string(100.0 * coarse.refinement_change) + "%");
    return coarse;
}

} // namespace kfpq::exactnorms
