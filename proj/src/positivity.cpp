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
#include "positivity.hpp"

#include <algorithm>
#include <cmath>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_roots.h>
#include <unsupported/Eigen/MatrixFunctions>

namespace kfpq::positivity {

using symbols::HamiltonBasis;

namespace {

struct Flow {
    double C, S; // real for both admissible phases
};

Flow flow(double t, const ModelParams &p) {
    cplx C, S;
    symbols::flow_cs(t, p.z, C, S);
    return {C.real(), S.real()};
}

double check_sign(int sign) {
    if (sign != 1 && sign != -1) fail(ErrorCode::InvalidParameter, "sign must be +1 or -1");
    return double(sign);
}

struct Coeffs {
    cplx a, b, c, d;
};

Coeffs coefficients(double t, double delta, const ModelParams &p, double sg) {
    const Flow f = flow(t, p);
    const double sa = p.sin_alpha(), ca = p.cos_alpha(), e2 = p.phase2();
    const double ch = std::cosh(delta * e2), sh = std::sinh(delta * e2);
    const double et = std::exp(sg * t), ed = std::exp(sg * delta * e2);
    const double q = 1.0 + 2.0 * f.S * f.S; // C^2 + (1 - 4 z^2) S^2
    Coeffs k;
    k.a = et * ed * (sg * sa * ch - ca * sh) - (sg * sa * q - 2.0 * ca * f.C * f.S);
    k.b = kI * (et * ed * (ca * ch - sg * sa * sh) - (ca * q - sg * 2.0 * sa * f.C * f.S));
    k.c = -4.0 * kI * p.z * ca * f.S * f.S;
    k.d = sg * 4.0 * p.z * sa * f.S * f.S;
    return k;
}

} // namespace

Mat2 hermitian_difference(double t, double delta, const ModelParams &p, int sign) {
    if (!(t >= 0.0)) fail(ErrorCode::InvalidParameter, "hermitian_difference: t must be >= 0");
    const double sg = check_sign(sign);
    const HamiltonBasis hb = symbols::hamilton_basis(p.alpha);
    const auto &T = hb.T(sign);
    const Mat2 It = T.adjoint() * hb.I * T, Jt = T.adjoint() * hb.J * T, Kt = T.adjoint() * hb.K * T;
    const Coeffs k = coefficients(t, delta, p, sg);
    Mat2 m = std::exp(-sg * t) * (k.a * Mat2::Identity() + k.b * It + k.c * Jt + k.d * Kt);
    return 0.5 * (m + m.adjoint());
}

Mat2 hermitian_difference_direct(double t, double delta, const ModelParams &p, int sign) {
    check_sign(sign);
    const HamiltonBasis hb = symbols::hamilton_basis(p.alpha);
    const Mat4 km = symbols::kappa_matrix(-t, p.z, hb);
    const Mat4 k0 = symbols::kappa0(delta, p).matrix;
    const Mat4 is = kI * hb.sigma;
    const Mat4 d = k0 * is * k0 - km.adjoint() * is * km;
    const auto &T = hb.T(sign);
    return T.adjoint() * d * T;
}

double delta0_numeric(double t, const ModelParams &p, int sign) {
    check_sign(sign);
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "delta0_numeric: t must be > 0");
    const HamiltonBasis hb = symbols::hamilton_basis(p.alpha);
    const Mat4 km = Mat4(kI * t * symbols::hamilton_map(symbols::hess_K(p))).exp();
    const Mat4 hq = symbols::hamilton_map(symbols::hess_Oq());
    const Mat4 is = kI * hb.sigma;
    const auto &T = hb.T(sign);
    const Mat4 flow_part = km.adjoint() * is * km;
    auto lam = [&](double d) {
        const Mat4 k0 = Mat4(kI * d * hq).exp();
        const Mat2 m = T.adjoint() * (k0 * is * k0 - flow_part) * T;
        return Eigen::SelfAdjointEigenSolver<Mat2>(Mat2(0.5 * (m + m.adjoint()))).eigenvalues()(0);
    };
    double hi = 1e-9;
    int n = 0;
    while (lam(hi) >= 0.0) {
        hi *= 2.0;
        if (++n > 80) fail(ErrorCode::InvalidParameter, "delta0_numeric: no sign change found");
    }
    struct Ctx {
        decltype(lam) *f;
    } ctx{&lam};
    gsl_function f;
    f.function = [](double x, void *c) { return (*static_cast<Ctx *>(c)->f)(x); };
    f.params = &ctx;
    gsl_root_fsolver *s = gsl_root_fsolver_alloc(gsl_root_fsolver_brent);
    gsl_error_handler_t *old = gsl_set_error_handler_off();
    gsl_root_fsolver_set(s, &f, n == 0 ? 0.0 : 0.5 * hi, hi);
    double root = 0.5 * hi;
    for (int it = 0; it < 200; ++it) {
        gsl_root_fsolver_iterate(s);
        root = gsl_root_fsolver_root(s);
        if (gsl_root_test_interval(gsl_root_fsolver_x_lower(s), gsl_root_fsolver_x_upper(s), 0.0, 1e-13) == GSL_SUCCESS) break;
    }
    gsl_set_error_handler(old);
    gsl_root_fsolver_free(s);
    return root;
}

PositivityReport report(double t, double delta, const ModelParams &p, int sign) {
    const double sg = check_sign(sign);
    PositivityReport r;
    r.t = t;
    r.delta = delta;
    r.sign = sign;
    const Coeffs k = coefficients(t, delta, p, sg);
    r.a = k.a;
    r.b = k.b;
    r.c = k.c;
    r.d = k.d;
    r.det_value = k.a * k.a + k.b * k.b + k.c * k.c + k.d * k.d;

    // expanded scalar determinant; it carries an extra factor -e^{2i alpha} e^{+-2t}
    const Flow f = flow(t, p);
    const double et = std::exp(sg * t), e2 = p.phase2();
    const double s2 = f.S * f.S;
    const double expanded = 1.0 - et * (2.0 + 4.0 * s2 - et) -
                            sg * et * (-std::expm1(sg * 2.0 * delta * e2)) * (2.0 * f.C * f.S - sg * (1.0 + 2.0 * s2 - et));
    r.det_closed = -e2 * expanded / (et * et);

    const Mat2 m = hermitian_difference(t, delta, p, sign);
    Eigen::SelfAdjointEigenSolver<Mat2> es(m, Eigen::EigenvaluesOnly);
    r.max_eigenvalue = es.eigenvalues()(1);
    // the small eigenvalue suffers cancellation when the matrix is large; recover it from the
    // determinant instead whenever the largest one is positive
    if (r.max_eigenvalue > 0.0)
        r.min_eigenvalue = r.det_closed / r.max_eigenvalue;
    else
        r.min_eigenvalue = es.eigenvalues()(0);
    r.is_positive = r.min_eigenvalue > 0.0;
    return r;
}

double a_of_t(double t, const ModelParams &p) {
    const Flow f = flow(t, p);
    const double h = 0.5 * t;
    const double x = 1.0 + 4.0 * p.phase2() * p.nu; // n1^2, real
    double diff;                                    // S - sh(t/2)
    if (h <= 2.0 && h * std::sqrt(std::abs(x)) <= 2.0) {
        // sum_k>=1 h^{2k+1} (x^k - 1) / (2k+1)!, with x^k - 1 = (x - 1)(1 + x + ... + x^{k-1})
        diff = 0.0;
        double hp = h, fact = 1.0, geo = 0.0, xk = 1.0;
        for (int k = 1; k < 80; ++k) {
            hp *= h * h;
            fact *= double((2 * k) * (2 * k + 1));
            geo += xk;
            xk *= x;
            diff += hp * (x - 1.0) * geo / fact;
            // individual terms can vanish (x = -1), so stop on a bound of the tail instead
            if (hp * (std::abs(xk) + 1.0) / fact <= 1e-18 * std::abs(diff)) break;
        }
    } else {
        diff = f.S - std::sinh(h);
    }
    return 2.0 * diff * (f.S + std::sinh(h));
}

double delta0(double t, const ModelParams &p) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "delta0: t must be > 0");
    const Flow f = flow(t, p);
    const double A = a_of_t(t, p);
    const double D = 2.0 * f.C * f.S + std::sinh(t);
    // the log argument (D + A)/(D - A) is real; it must also be positive
    const double ratio = 2.0 * A / (D - A);
    if (!std::isfinite(ratio) || !(ratio > -1.0))
        fail(ErrorCode::NonRealDelta0, "delta0: log argument is not positive");
    return 0.5 * p.phase2() * std::log1p(ratio);
}

std::pair<double, double> delta0_per_sign(double t, const ModelParams &p) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "delta0_per_sign: t must be > 0");
    // solve the expanded determinant of each sign for e^{+-2 delta e^{2i alpha}}
    double out[2];
    for (int i = 0; i < 2; ++i) {
        const double sg = i == 0 ? 1.0 : -1.0;
        const Flow f = flow(t, p);
        const double et = std::exp(sg * t), s2 = f.S * f.S;
        const double num = 1.0 - et * (2.0 + 4.0 * s2 - et);
        const double den = sg * et * (2.0 * f.C * f.S - sg * (1.0 + 2.0 * s2 - et));
        const double x = 1.0 - num / den;
        if (!(x > 0.0)) fail(ErrorCode::NonRealDelta0, "delta0_per_sign: log argument is not positive");
        out[i] = sg * 0.5 * p.phase2() * std::log(x);
    }
    return {out[0], out[1]};
}

LowerBoundFit delta0_lower_bound_check(const ModelParams &p, double epsilon0) {
    if (!(epsilon0 > 0.0 && epsilon0 < 1.0))
        fail(ErrorCode::InvalidParameter, "delta0_lower_bound_check: epsilon0 must lie in (0,1)");
    const double t0 = epsilon0 / (1.0 + std::sqrt(p.nu));
    double c = INFINITY;
    constexpr int n = 200;
    for (int i = 0; i < n; ++i) {
        const double t = t0 * std::pow(1e-4, double(i) / (n - 1));
        c = std::min(c, delta0(t, p) / (p.nu * t * t * t));
    }
    // leading behaviour is t^3/12; a fit above 1/48 keeps the constant visibly away from zero
    return {c, c > 1.0 / 48.0};
}

double sup_factor(double d) {
    if (!(d > 0.0)) fail(ErrorCode::InvalidParameter, "sup_factor: d must be > 0");
    // x e^{-x^2}, x^2 = d(n + 1/2), peaks at d(n + 1/2) = 1/2
    const double nstar = std::max(0.0, 0.5 / d - 0.5);
    double best = 0.0;
    for (double n : {std::floor(nstar), std::ceil(nstar)}) {
        const double x = d * (n + 0.5);
        best = std::max(best, std::sqrt(x) * std::exp(-x));
    }
    return best;
}

double decay_bound_flow_small(double t, const ModelParams &p) {
    const double d = 0.5 * delta0(t, p);
    return std::sqrt(p.nu / d) * sup_factor(d) * std::exp(-t * std::sqrt(p.nu));
}

double decay_bound_flow(double t, const ModelParams &p, double epsilon0) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "decay_bound_flow: t must be > 0");
    const double t0 = epsilon0 / (1.0 + std::sqrt(p.nu));
    if (t <= t0) return decay_bound_flow_small(t, p);
    // split e^{-tK} = e^{-t0 K} e^{-(t - t0) K} and use Re K >= 1/2 on the second factor
    return decay_bound_flow_small(t0, p) * std::exp(-(t - t0) * (std::sqrt(p.nu) + 0.5));
}

} // namespace kfpq::positivity
