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
#include "bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_multimin.h>

namespace kfpq::bargmann {

namespace {

void require_nu(const ModelParams &p, double lo, const char *op) {
    if (p.alpha != symbols::Alpha::HalfPi)
        fail(ErrorCode::InvalidParameter, std::string(op) + ": requires alpha = pi/2");
    if (!(p.nu > lo)) fail(ErrorCode::InvalidParameter, std::string(op) + ": nu out of range");
}

// Solve Hess(K*) = L^T B R + R^T B^T L for B, L = [-A+, Id], R = [-A-, Id], by least squares.
Mat2 identify_B(const Mat4 &hess, const Mat2 &ap, const Mat2 &am, double &residual) {
    Eigen::Matrix<cplx, 2, 4> L, R;
    L << -ap, Mat2::Identity();
    R << -am, Mat2::Identity();
    Eigen::Matrix<cplx, 16, 4> sys;
    for (int k = 0; k < 4; ++k) {
        Mat2 e = Mat2::Zero();
        e(k / 2, k % 2) = 1.0;
        const Mat4 img = L.transpose() * e * R + R.transpose() * e.transpose() * L;
        sys.col(k) = Eigen::Map<const Eigen::Matrix<cplx, 16, 1>>(img.data());
    }
    const Eigen::Matrix<cplx, 16, 1> rhs = Eigen::Map<const Eigen::Matrix<cplx, 16, 1>>(hess.data());
    const Eigen::Vector4cd b = sys.colPivHouseholderQr().solve(rhs);
    residual = (sys * b - rhs).cwiseAbs().maxCoeff();
    Mat2 B;
    B << b(0), b(1), b(2), b(3);
    return B;
}

} // namespace

BargmannReduction reduce(const ModelParams &p) {
    require_nu(p, 0.25, "bargmann::reduce");
    BargmannReduction r;
    // the adjoint has the complex conjugate Weyl symbol
    const Mat4 hess = symbols::hess_K(p).conjugate();
    r.H = symbols::hamilton_map(hess);
    const double sq = std::sqrt(p.nu);
    const cplx n1 = kI * p.r1();
    int col = 0;
    for (int e1 : {1, -1})
        for (int e2 : {1, -1}) {
            const cplx l = 0.5 * (double(e1) * kI + double(e2) * kI * n1);
            r.lambdas[col] = l;
            r.X.col(col) << 1.0, kI * l / sq, (l * l - p.nu) / l, kI * (l * l - p.nu) / sq;
            ++col;
        }
    r.eig_residual = 0.0;
    for (int k = 0; k < 4; ++k)
        r.eig_residual = std::max(r.eig_residual, (r.H * r.X.col(k) - r.lambdas[k] * r.X.col(k)).cwiseAbs().maxCoeff());

    // Lambda_+ (Im lambda > 0) is spanned by the first two columns, Lambda_- by the last two
    auto lagrangian = [&](int c0) {
        const Mat2 top = r.X.block(0, c0, 2, 2), bot = r.X.block(2, c0, 2, 2);
        Eigen::FullPivLU<Mat2> lu(top);
        if (lu.rank() < 2 || std::abs(top.determinant()) < 1e-10 * top.squaredNorm())
            fail(ErrorCode::DegenerateEigenbasis, "bargmann::reduce: eigenvector basis is degenerate");
        return Mat2(bot * lu.inverse());
    };
    r.A_plus = lagrangian(0);
    r.A_minus = lagrangian(2);
    r.B = identify_B(hess, r.A_plus, r.A_minus, r.identification_residual);
    const Mat2 id = Mat2::Identity();
    r.M = (id - kI * r.A_plus) * r.B;
    r.C = (id - kI * r.A_plus).inverse() * (id + kI * r.A_plus);
    return r;
}

void trig_cs(double t, const ModelParams &p, double &C, double &S) {
    const double r1 = p.r1();
    C = std::cos(0.5 * t * r1);
    S = std::sin(0.5 * t * r1) / r1;
}

Mat2 pauli(int k) {
    Mat2 s;
    switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: fail(ErrorCode::InvalidParameter, "pauli: index must be 1, 2 or 3");
    }
    return s;
}

Mat2 exp_tM(double t, const ModelParams &p) {
    require_nu(p, 0.25, "bargmann::exp_tM");
    double C, S;
    trig_cs(t, p, C, S);
    const Mat2 v = -0.5 * pauli(3) - kI * std::sqrt(p.nu) * pauli(2);
    return std::exp(0.5 * t) * (C * Mat2::Identity() + 2.0 * S * v);
}

Mat2 gram(double t, const ModelParams &p) {
    require_nu(p, 0.25, "bargmann::gram");
    double C, S;
    trig_cs(t, p, C, S);
    return std::exp(t) * ((1.0 + 2.0 * S * S) * Mat2::Identity() - 2.0 * C * S * pauli(3) +
                          4.0 * std::sqrt(p.nu) * S * S * pauli(1));
}

GramEigen gram_eigenvalues(double t, const ModelParams &p) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "gram_eigenvalues: t must be > 0");
    require_nu(p, 0.25, "bargmann::gram_eigenvalues");
    double C, S;
    trig_cs(t, p, C, S);
    const double a = 1.0 + 2.0 * S * S;
    // sqrt(-N(v)) = 2|S| sqrt(1 + S^2)
    const double root = 2.0 * std::abs(S) * std::sqrt(1.0 + S * S);
    const double et = std::exp(t);
    return {et * (a + root), et * (a - root), et * std::exp(-2.0 * std::asinh(std::abs(S)))};
}

double quotient_closed(double t, const ModelParams &p) {
    double C, S;
    trig_cs(t, p, C, S);
    const double sh = std::sinh(0.5 * t);
    return 4.0 * (sh - S) * (sh + S) / (-std::expm1(-t) + 2.0 * S * S + 2.0 * S * C);
}

WeightedQuotient quotient(double t, const ModelParams &p) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "quotient: t must be > 0");
    require_nu(p, 0.25, "bargmann::quotient");
    double C, S;
    trig_cs(t, p, C, S);
    WeightedQuotient q;
    q.t = t;
    const double et = std::exp(t);
    q.S_pq = 4.0 * std::sqrt(p.nu) * et * S * S;
    q.S_pp = et * (-std::expm1(-t) + 2.0 * S * S + 2.0 * S * C);
    q.e_q_prime = Vec2(1.0, -q.S_pq / q.S_pp);
    q.Q_t_eq = quotient_closed(t, p);
    q.lambda_minus = gram_eigenvalues(t, p).lambda_minus;
    q.sup_value = 2.0 * kC0 / q.Q_t_eq;
    return q;
}

double sup_radial(double t, const ModelParams &p) {
    const WeightedQuotient q = quotient(t, p);
    const double l2 = std::norm(q.e_q_prime(0));
    // maximize s l2 e^{-s Q/2} over s >= 0 with Brent on the negated objective
    struct Ctx {
        double l2, Q;
    } ctx{l2, q.Q_t_eq};
    gsl_function f;
    f.function = [](double s, void *c) {
        const auto *x = static_cast<Ctx *>(c);
        return -s * x->l2 * std::exp(-0.5 * s * x->Q);
    };
    f.params = &ctx;
    // x tolerance 1e-7 gives ~1e-14 in the value at a smooth maximum
    const double s0 = 1.0 / q.Q_t_eq;
    gsl_min_fminimizer *m = gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent);
    if (gsl_min_fminimizer_set(m, &f, s0, 1e-3 * s0, 50.0 * s0) != GSL_SUCCESS) {
        gsl_min_fminimizer_free(m);
        fail(ErrorCode::QuadratureNotConverged, "sup_radial: bad initial bracket");
    }
    int status = GSL_CONTINUE;
    for (int it = 0; it < 200 && status == GSL_CONTINUE; ++it) {
        gsl_min_fminimizer_iterate(m);
        status = gsl_min_test_interval(gsl_min_fminimizer_x_lower(m), gsl_min_fminimizer_x_upper(m), 0.0, 1e-7);
    }
    const double best = -gsl_min_fminimizer_f_minimum(m);
    gsl_min_fminimizer_free(m);
    if (status != GSL_SUCCESS) fail(ErrorCode::QuadratureNotConverged, "sup_radial: Brent search did not converge");
    return best;
}

double sup_unstructured(double t, const ModelParams &p, std::uint64_t seed) {
    const Mat2 g = gram(t, p) - Mat2::Identity();
    gsl_multimin_function fn;
    fn.n = 4;
    fn.params = const_cast<Mat2 *>(&g);
    // minimize -(log|z_q|^2 - Q_t(z)/2)
    fn.f = [](const gsl_vector *x, void *c) {
        const Mat2 &gm = *static_cast<const Mat2 *>(c);
        const Vec2 z(cplx(gsl_vector_get(x, 0), gsl_vector_get(x, 1)), cplx(gsl_vector_get(x, 2), gsl_vector_get(x, 3)));
        const double zq = std::norm(z(0));
        if (zq == 0.0) return 1e300;
        return -(std::log(zq) - 0.5 * (z.adjoint() * gm * z)(0).real());
    };
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(std::max(1e-300, g.cwiseAbs().maxCoeff()));
    double best = -INFINITY;
    gsl_vector *x = gsl_vector_alloc(4), *step = gsl_vector_alloc(4);
    gsl_multimin_fminimizer *m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 4);
    for (int start = 0; start < 8; ++start) {
        for (int i = 0; i < 4; ++i) gsl_vector_set(x, i, scale * nd(rng));
        // restart from the best vertex until the objective stops moving
        double prev = INFINITY;
        bool converged = false;
        for (int restart = 0; restart < 40 && !converged; ++restart) {
            double xn = 0.0;
            for (int i = 0; i < 4; ++i) xn = std::max(xn, std::abs(gsl_vector_get(x, i)));
            for (int i = 0; i < 4; ++i) gsl_vector_set(step, i, 0.25 * std::max(xn, scale));
            gsl_multimin_fminimizer_set(m, &fn, x, step);
            for (int it = 0; it < 5000; ++it) {
                if (gsl_multimin_fminimizer_iterate(m)) break;
                if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-9 * std::max(xn, scale)) == GSL_SUCCESS)
                    break;
            }
            const double cur = gsl_multimin_fminimizer_minimum(m);
            gsl_vector_memcpy(x, gsl_multimin_fminimizer_x(m));
            converged = std::abs(cur - prev) <= 1e-13 * (1.0 + std::abs(cur));
            prev = cur;
        }
        if (converged) best = std::max(best, -prev);
    }
    gsl_multimin_fminimizer_free(m);
    gsl_vector_free(x);
    gsl_vector_free(step);
    if (!std::isfinite(best)) fail(ErrorCode::QuadratureNotConverged, "sup_unstructured: no start converged");
    return std::exp(best);
}

RegimeFit quotient_regimes(const std::vector<double> &nus, double t_max, int n) {
    RegimeFit f{0.0, 0.0, 0.0, 0.0};
    for (double nu : nus) {
        const ModelParams p = ModelParams::make(nu, symbols::Alpha::HalfPi);
        const double seam = 4.0 / p.r1();
        for (int i = 0; i < n; ++i) {
            const double ts = seam * std::pow(1e-3, double(i) / (n - 1));
            const double q = quotient_closed(ts, p);
            f.c_small = std::max(f.c_small, nu * ts * ts * ts / q);
            if (seam < t_max) {
                const double tl = seam + (t_max - seam) * double(i) / (n - 1);
                const double ql = quotient_closed(tl, p);
                const double sh = std::sinh(0.5 * tl);
                f.c_large = std::max(f.c_large, std::exp(tl) / ql);
                f.literal_large = std::max(f.literal_large, (1.0 / ql) / (2.0 * std::exp(-tl)));
                f.chain_large = std::max(f.chain_large, (1.0 / ql) / (2.0 / (sh * sh)));
            }
        }
    }
    return f;
}

double remainder_bound(double t, const ModelParams &p) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidParameter, "remainder_bound: t must be > 0");
    require_nu(p, 1.0, "bargmann::remainder_bound");
    // nu ||u_t||^2 + nu ||a_q u_t||^2 with the second term bounded through the weighted sup
    const double q = quotient_closed(t, p);
    return std::sqrt(p.nu) * std::exp(-t * std::cbrt(p.nu)) * std::sqrt(1.0 + 2.0 * kC0 / q);
}

double envelope_constant() { return std::pow(1.5, 1.5) * std::exp(-1.5); }

} // namespace kfpq::bargmann
