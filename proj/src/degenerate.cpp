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
#include "degenerate.hpp"

#include <algorithm>
#include <cmath>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_roots.h>

namespace kfpq::degenerate {

FiberParams FiberParams::make(double lambda1, double xi_q) {
    if (!std::isfinite(lambda1) || !std::isfinite(xi_q)) fail(ErrorCode::InvalidParameter, "FiberParams: non-finite input");
    return {lambda1, xi_q, std::hypot(xi_q, lambda1)};
}

double u_of_t(double t) {
    const double x = 0.5 * t;
    if (std::abs(x) < 0.1) {
        // x - tanh x = x^3/3 - 2x^5/15 + 17x^7/315 - 62x^9/2835 + 1382x^11/155925 - 21844x^13/6081075
        static const double c[] = {1.0 / 3, -2.0 / 15, 17.0 / 315, -62.0 / 2835, 1382.0 / 155925, -21844.0 / 6081075};
        const double x2 = x * x;
        double s = 0.0;
        for (int k = 5; k >= 0; --k) s = s * x2 + c[k];
        return -s * x2 * x;
    }
    return std::tanh(x) - x;
}

double fiber_norm(double t, double b) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "fiber_norm: t must be > 0");
    return std::exp(std::tanh(0.5 * t) * b * b);
}

double fiber_weighted(double t, double b) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "fiber_weighted: t must be > 0");
    const double b2 = b * b;
    return b2 * std::exp(u_of_t(t) * b2);
}

double F(double t) {
    if (!(t >= 0.0)) fail(ErrorCode::InvalidParameter, "F: t must be >= 0");
    if (t == 0.0) return 24.0;
    const double u = u_of_t(t);
    // -t^3/u = 24 / (1 - t^2/10 + ...) stays well conditioned through the series for u
    return -t * t * t * std::exp(u) / u;
}

Richardson F_at_zero(double h) {
    if (!(h > 0.0)) fail(ErrorCode::InvalidParameter, "F_at_zero: h must be > 0");
    const double f0 = F(h), f1 = F(0.5 * h), f2 = F(0.25 * h);
    // F = F0 + a t^2 + b t^3 + ...
    const double r01 = (4.0 * f1 - f0) / 3.0, r12 = (4.0 * f2 - f1) / 3.0;
    const double r = (8.0 * r12 - r01) / 7.0;
    return {r, std::abs(r - r12)};
}

FiberSup fiber_sup(double t, double lambda1) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "fiber_sup: t must be > 0");
    const double u = u_of_t(t);
    const double star = -1.0 / u, l2 = lambda1 * lambda1;
    if (star >= l2) return {std::exp(-1.0) / (-u), star, true};
    return {l2 * std::exp(u * l2), l2, false};
}

FiberSup fiber_sup_numeric(double t, double lambda1) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "fiber_sup_numeric: t must be > 0");
    const double u = u_of_t(t), l2 = lambda1 * lambda1;
    // maximize y + u e^y, y = log b^2, by golden section; concave in y
    auto g = [u](double y) { return y + u * std::exp(y); };
    const double lo = std::log(std::max(l2, 1e-3 / -u)), hi = std::log(std::max(l2, 1.0 / -u) * 1e2);
    if (1.0 + u * std::exp(lo) <= 0.0) return {std::exp(g(lo)), std::exp(lo), false};
    const int n = 64;
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (g(lo + (hi - lo) * i / n) > g(lo + (hi - lo) * best / n)) best = i;
    struct Ctx {
        double u;
    } ctx{u};
    gsl_function f;
    f.function = [](double y, void *p) { return -(y + static_cast<Ctx *>(p)->u * std::exp(y)); };
    f.params = &ctx;
    const double a = lo + (hi - lo) * std::max(best - 1, 0) / n, b = lo + (hi - lo) * std::min(best + 1, n) / n;
    double y = lo + (hi - lo) * best / n;
    if (best > 0 && best < n) {
        gsl_min_fminimizer *m = gsl_min_fminimizer_alloc(gsl_min_fminimizer_goldensection);
        gsl_error_handler_t *old = gsl_set_error_handler_off();
        if (gsl_min_fminimizer_set(&*m, &f, y, a, b) == GSL_SUCCESS) {
            for (int it = 0; it < 500; ++it) {
                gsl_min_fminimizer_iterate(m);
                if (gsl_min_test_interval(gsl_min_fminimizer_x_lower(m), gsl_min_fminimizer_x_upper(m), 1e-10, 0.0) == GSL_SUCCESS)
                    break;
            }
            y = gsl_min_fminimizer_x_minimum(m);
        }
        gsl_min_fminimizer_free(m);
        // the value is flat at the top; locate the maximizer as the root of 1 + u e^y inside the final bracket
        gsl_function d;
        d.function = [](double yy, void *p) { return 1.0 + static_cast<Ctx *>(p)->u * std::exp(yy); };
        d.params = &ctx;
        gsl_root_fsolver *r = gsl_root_fsolver_alloc(gsl_root_fsolver_brent);
        if (d.function(a, &ctx) * d.function(b, &ctx) < 0.0 && gsl_root_fsolver_set(r, &d, a, b) == GSL_SUCCESS) {
            double yr = y;
            for (int it = 0; it < 200; ++it) {
                gsl_root_fsolver_iterate(r);
                yr = gsl_root_fsolver_root(r);
                if (gsl_root_test_interval(gsl_root_fsolver_x_lower(r), gsl_root_fsolver_x_upper(r), 0.0, 1e-15) == GSL_SUCCESS)
                    break;
            }
            if (g(yr) >= g(y)) y = yr;
        }
        gsl_root_fsolver_free(r);
        gsl_set_error_handler(old);
    }
    return {std::exp(g(y)), std::exp(y), true};
}

double decay_bound_degenerate(double t, double lambda1) {
    if (!(t > 0.0) || !std::isfinite(lambda1)) fail(ErrorCode::InvalidParameter, "decay_bound_degenerate: t must be > 0");
    if (t <= 1.0) return F(t) / (t * t * t);
    // ||W e^{-t0(K+1)}|| <= e^{-t0} F(t0)/t0^3 and ||e^{-(t-t0)(K+1)}|| <= e^{-(t-t0)}
    return F(kT0) / (kT0 * kT0 * kT0) * std::exp(-t);
}

double decay_exact_degenerate(double t, double lambda1) { return std::exp(-t) * fiber_sup(t, lambda1).value; }

double fiber_angle(double lambda1, double xi_q) {
    if (xi_q == 0.0 && lambda1 == 0.0) return 0.0;
    return std::atan2(-lambda1, xi_q);
}

double fiber_reduction_check(double lambda1, double xi_q) {
    const FiberParams fp = FiberParams::make(lambda1, xi_q);
    const double th = fiber_angle(lambda1, xi_q);
    const double c = std::cos(th), s = std::sin(th);
    // new coordinates (p', xi_p') = R (p, xi_p), R = [[c, s], [-s, c]]
    Eigen::Matrix2d R;
    R << c, s, -s, c;
    // linear part: i(xi_q p - lambda1 xi_p) against i b p'
    const Eigen::Vector2d lin(xi_q, -lambda1);
    const Eigen::Vector2d lin_new = fp.b * R.row(0).transpose();
    double res = (lin - lin_new).cwiseAbs().maxCoeff();
    // quadratic part of O_p is fixed: R^T R = Id
    res = std::max(res, (R.transpose() * R - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());
    // embedded in (q, p, xi_q, xi_p) the map is symplectic and fixes xi_q, so b(xi_q) is unchanged
    Eigen::Matrix4d M = Eigen::Matrix4d::Identity();
    M(1, 1) = c;
    M(1, 3) = s;
    M(3, 1) = -s;
    M(3, 3) = c;
    Eigen::Matrix4d W = Eigen::Matrix4d::Zero();
    W.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
    W.bottomLeftCorner<2, 2>() = -Eigen::Matrix2d::Identity();
    res = std::max(res, (M.transpose() * W * M - W).cwiseAbs().maxCoeff());
    const Eigen::Vector4d e_xi(0.0, 0.0, 1.0, 0.0);
    res = std::max(res, std::abs(e_xi.dot(M * Eigen::Vector4d(0.3, -1.1, xi_q, 0.7)) - xi_q));
    return res;
}

} // namespace kfpq::degenerate
