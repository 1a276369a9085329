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
#include "symbols.hpp"

#include <algorithm>
#include <cmath>

namespace kfpq::symbols {

namespace {

Mat4 omega() {
    Mat4 o = Mat4::Zero();
    o(0, 2) = o(1, 3) = 1.0;
    o(2, 0) = o(3, 1) = -1.0;
    return o;
}

void put(Mat4 &m, int i, int j, cplx c) {
    m(i, j) += c;
    if (i != j) m(j, i) += c;
}

// cosh(w) and sinh(w)/w as entire functions of w2 = w^2
void ch_shc(cplx w2, cplx &ch, cplx &shc) {
    if (std::abs(w2) < 1e-4) {
        ch = shc = 0.0;
        cplx pw = 1.0;
        double fe = 1.0, fo = 1.0;
        for (int k = 0; k < 6; ++k) {
            ch += pw / fe;
            shc += pw / fo;
            pw *= w2;
            fe *= double((2 * k + 1) * (2 * k + 2));
            fo *= double((2 * k + 2) * (2 * k + 3));
        }
        return;
    }
    const cplx w = std::sqrt(w2);
    ch = std::cosh(w);
    shc = std::sinh(w) / w;
}

} // namespace

void PotentialSpec::validate() const {
    if (!(lambda1 >= 0.0) || !std::isfinite(lambda1))
        fail(ErrorCode::InvalidParameter, "PotentialSpec: lambda1 must be finite and >= 0");
    for (double v : nus) {
        if (!std::isfinite(v)) fail(ErrorCode::InvalidParameter, "PotentialSpec: non-finite curvature");
        if (kind == PotentialKind::NonDegenerate && v == 0.0)
            fail(ErrorCode::InvalidParameter, "PotentialSpec: non-degenerate curvatures must be nonzero");
    }
    if (kind == PotentialKind::NonDegenerate && lambda1 != 0.0)
        fail(ErrorCode::InvalidParameter, "PotentialSpec: lambda1 requires the degenerate kind");
}

Constants constants(const PotentialSpec &spec) {
    spec.validate();
    Constants c;
    for (double v : spec.nus) {
        if (v > 0.0)
            c.tr_plus += v;
        else
            c.tr_minus -= v;
    }
    c.A = std::max(std::pow(1.0 + c.tr_plus, 2.0 / 3.0), 1.0 + c.tr_minus);
    const double lg = std::log(2.0 + c.tr_minus);
    c.B = std::max(std::pow(spec.lambda1, 4.0 / 3.0), (1.0 + c.tr_minus) / (lg * lg));
    return c;
}

ModelParams ModelParams::make(double nu, Alpha alpha, double lambda1) {
    if (!(nu > 0.0) || !std::isfinite(nu)) fail(ErrorCode::InvalidParameter, "ModelParams: nu must be positive");
    ModelParams p;
    p.nu = nu;
    p.alpha = alpha;
    p.lambda1 = lambda1;
    p.z = p.phase() * std::sqrt(nu);
    // 1 + 4 z^2 = 1 + 4 e^{2i alpha} nu is real for both phases
    p.n1 = std::sqrt(cplx(1.0 + 4.0 * p.phase2() * nu));
    return p;
}

ModelParams ModelParams::from_curvature(double c) {
    if (c == 0.0 || !std::isfinite(c)) fail(ErrorCode::InvalidParameter, "curvature must be nonzero");
    return make(std::abs(c), c < 0.0 ? Alpha::Zero : Alpha::HalfPi);
}

double ModelParams::r1() const {
    if (!(nu > 0.25)) fail(ErrorCode::InvalidParameter, "r1 requires nu > 1/4");
    return std::sqrt(4.0 * nu - 1.0);
}

void flow_cs(double t, cplx z, cplx &C, cplx &S) {
    const cplx w2 = 0.25 * t * t * (1.0 + 4.0 * z * z);
    cplx shc;
    ch_shc(w2, C, shc);
    S = 0.5 * t * shc;
}

HamiltonBasis hamilton_basis(Alpha alpha) {
    HamiltonBasis hb;
    hb.alpha = alpha;
    const cplx ea = alpha == Alpha::Zero ? cplx(1.0) : kI;
    const cplx eam = 1.0 / ea;
    const double e2 = alpha == Alpha::Zero ? 1.0 : -1.0; // e^{2i alpha} = e^{-2i alpha}
    hb.E << 0, 0, e2, 0, 0, 0, 0, -1, -e2, 0, 0, 0, 0, 1, 0, 0;
    hb.I << 0, 0, -e2, 0, 0, 0, 0, -1, e2, 0, 0, 0, 0, 1, 0, 0;
    hb.J << 0, -kI * eam, 0, 0, -kI * ea, 0, 0, 0, 0, 0, 0, kI * ea, 0, 0, kI * eam, 0;
    hb.K << 0, 0, 0, -kI * eam, 0, 0, -kI * eam, 0, 0, -kI * ea, 0, 0, -kI * ea, 0, 0, 0;
    hb.sigma = alpha == Alpha::Zero ? hb.I : hb.E;
    const double s = 1.0 / std::sqrt(2.0);
    hb.T_plus << s, 0, 0, s, -kI * e2 * s, 0, 0, kI * s;
    hb.T_minus << s, 0, 0, s, kI * e2 * s, 0, 0, -kI * s;
    return hb;
}

Mat4 hess_Op() {
    Mat4 h = Mat4::Zero();
    h(1, 1) = h(3, 3) = 1.0;
    return h;
}

Mat4 hess_X(Alpha alpha) {
    const cplx ea = alpha == Alpha::Zero ? cplx(1.0) : kI;
    Mat4 h = Mat4::Zero();
    put(h, 1, 2, kI / ea);
    put(h, 0, 3, kI * ea);
    return h;
}

Mat4 hess_Y(Alpha alpha) {
    const cplx ea = alpha == Alpha::Zero ? cplx(1.0) : kI;
    Mat4 h = Mat4::Zero();
    put(h, 1, 0, kI * ea);
    put(h, 2, 3, -kI / ea);
    return h;
}

Mat4 hess_Oq_phase(Alpha alpha) {
    const double e2 = alpha == Alpha::Zero ? 1.0 : -1.0;
    Mat4 h = Mat4::Zero();
    h(0, 0) = e2;
    h(2, 2) = e2;
    return h;
}

Mat4 hess_Oq() {
    Mat4 h = Mat4::Zero();
    h(0, 0) = h(2, 2) = 1.0;
    return h;
}

Mat4 hess_K(const ModelParams &p) { return hess_Op() + p.z * hess_X(p.alpha); }

Mat4 hamilton_map(const Mat4 &hess) {
    if ((hess - hess.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        fail(ErrorCode::NonSymmetricInput, "hamilton_map: Hessian is not symmetric");
    return omega() * hess;
}

Mat4 commutator_hess(const Mat4 &a, const Mat4 &b) {
    const Mat4 o = omega();
    return -kI * (b * o * a - a * o * b);
}

CanonicalMap reduce(const Mat4 &m, const HamiltonBasis &hb) {
    return {m, hb.T_plus.adjoint() * m * hb.T_plus, hb.T_minus.adjoint() * m * hb.T_minus};
}

Mat4 kappa_matrix(double t, cplx z, const HamiltonBasis &hb) {
    cplx C, S;
    flow_cs(t, z, C, S);
    const Mat4 id = Mat4::Identity();
    const Mat4 pre = std::cosh(0.5 * t) * id + kI * std::sinh(0.5 * t) * hb.E;
    return pre * (C * id + kI * S * (hb.I + 2.0 * z * hb.J));
}

CanonicalMap kappa(double t, const ModelParams &p) {
    if (!(t >= 0.0)) fail(ErrorCode::InvalidParameter, "kappa: t must be >= 0");
    const HamiltonBasis hb = hamilton_basis(p.alpha);
    return reduce(kappa_matrix(t, p.z, hb), hb);
}

CanonicalMap kappa0(double delta, const ModelParams &p) {
    if (!std::isfinite(delta)) fail(ErrorCode::InvalidParameter, "kappa0: delta must be finite");
    const HamiltonBasis hb = hamilton_basis(p.alpha);
    const double x = 0.5 * delta * p.phase2();
    const Mat4 id = Mat4::Identity();
    // e^{i x E} = cos(ix) + sin(ix) E since E^2 = -1
    const Mat4 pre = std::cosh(x) * id + kI * std::sinh(x) * hb.E;
    return reduce(pre * (std::cosh(x) * id - kI * std::sinh(x) * hb.I), hb);
}

QuaternionCoords quaternion_coords(const Mat4 &m, const HamiltonBasis &hb) {
    QuaternionCoords q;
    // traces of I, J, K and their pairwise products vanish; squares are -Id
    q.a = 0.25 * m.trace();
    q.b = -0.25 * (hb.I * m).trace();
    q.c = -0.25 * (hb.J * m).trace();
    q.d = -0.25 * (hb.K * m).trace();
    const Mat4 back = q.a * Mat4::Identity() + q.b * hb.I + q.c * hb.J + q.d * hb.K;
    q.residual = (back - m).cwiseAbs().maxCoeff();
    return q;
}

double commutator_check(const ModelParams &p) {
    const Mat4 op = hess_Op(), x = hess_X(p.alpha), y = hess_Y(p.alpha), oq = hess_Oq_phase(p.alpha);
    double r = (commutator_hess(op, x) - kI * y).cwiseAbs().maxCoeff();
    r = std::max(r, (commutator_hess(oq, x) - kI * y).cwiseAbs().maxCoeff());
    // the Hamilton map of a commutator is i times the matrix commutator
    const Mat4 hop = hamilton_map(op), hx = hamilton_map(x);
    r = std::max(r, (hamilton_map(commutator_hess(op, x)) - kI * (hop * hx - hx * hop)).cwiseAbs().maxCoeff());
    const Mat4 hd = hamilton_map(oq - op);
    r = std::max(r, (hd * hop - hop * hd).cwiseAbs().maxCoeff());
    r = std::max(r, (hd * hx - hx * hd).cwiseAbs().maxCoeff());
    return r;
}

} // namespace kfpq::symbols
