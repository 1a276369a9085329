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
#include <doctest.h>

#include "oracles.hpp"
#include "symbols.hpp"

using namespace kfpq;
using namespace kfpq::symbols;

namespace {

double mx(const Mat4 &m) { return m.cwiseAbs().maxCoeff(); }
const Alpha kAlphas[] = {Alpha::Zero, Alpha::HalfPi};

} // namespace

TEST_CASE("constants") {
    PotentialSpec s;
    s.kind = PotentialKind::Degenerate;
    Constants c = constants(s);
    CHECK(c.tr_plus == 0.0);
    CHECK(c.tr_minus == 0.0);
    CHECK(c.A == 1.0);
    CHECK(c.B == doctest::Approx(1.0 / (std::log(2.0) * std::log(2.0))));
    c = constants({PotentialKind::NonDegenerate, {-3.0}, 0.0});
    CHECK(c.tr_minus == 3.0);
    CHECK(c.A == 4.0);
    c = constants({PotentialKind::NonDegenerate, {7.0}, 0.0});
    CHECK(c.A == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(constants({PotentialKind::NonDegenerate, {0.0}, 0.0}), Error);
}

TEST_CASE("quaternion relations of the Hamilton basis") {
    for (Alpha al : kAlphas) {
        const HamiltonBasis h = hamilton_basis(al);
        const Mat4 id = Mat4::Identity();
        const double e2 = al == Alpha::Zero ? 1.0 : -1.0;
        CHECK(mx(h.E * h.E + id) <= 1e-14);
        CHECK(mx(h.I * h.I + id) <= 1e-14);
        CHECK(mx(h.J * h.J + id) <= 1e-14);
        CHECK(mx(h.K * h.K + id) <= 1e-14);
        CHECK(mx(h.I * h.J - h.K) <= 1e-14);
        for (const Mat4 *m : {&h.I, &h.J, &h.K}) CHECK(mx(h.E * *m - *m * h.E) <= 1e-14);
        CHECK(mx(h.E.conjugate() - h.E) == 0.0);
        CHECK(mx(h.I.conjugate() - h.I) == 0.0);
        CHECK(mx(h.J.conjugate() + e2 * h.J) <= 1e-14);
        CHECK(mx(h.K.conjugate() + e2 * h.K) <= 1e-14);
        Mat4 sig = Mat4::Zero();
        sig(0, 2) = sig(1, 3) = -1.0;
        sig(2, 0) = sig(3, 1) = 1.0;
        CHECK(mx(h.sigma - sig) == 0.0);
        for (int sg : {1, -1}) {
            const auto &T = h.T(sg);
            CHECK((T.adjoint() * T - Mat2::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
            CHECK((T.adjoint() * (kI * h.E) * T - double(sg) * Mat2::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
        }
        // the two compressions split C^4 with no cross terms for elements of the algebra
        for (const Mat4 *m : {&h.I, &h.J, &h.K})
            CHECK((h.T_plus.adjoint() * *m * h.T_minus).cwiseAbs().maxCoeff() <= 1e-15);
    }
    // J for alpha = 0 has entries +-i at the anti-diagonal positions of its blocks
    const HamiltonBasis h0 = hamilton_basis(Alpha::Zero);
    CHECK(h0.J(0, 1) == -kI);
    CHECK(h0.J(1, 0) == -kI);
    CHECK(h0.J(2, 3) == kI);
    CHECK(h0.J(3, 2) == kI);
    CHECK(h0.J.cwiseAbs().sum() == 4.0);
}

TEST_CASE("Hamilton maps of the model symbols") {
    for (Alpha al : kAlphas) {
        const HamiltonBasis h = hamilton_basis(al);
        CHECK(mx(hamilton_map(hess_Op()) + 0.5 * (h.E + h.I)) <= 1e-15);
        CHECK(mx(hamilton_map(hess_X(al)) + h.J) <= 1e-15);
        CHECK(mx(hamilton_map(hess_Y(al)) - h.K) <= 1e-15);
        CHECK(mx(hamilton_map(hess_Oq_phase(al)) - 0.5 * (h.E - h.I)) <= 1e-15);
        for (double nu : {0.1, 1.0, 10.0}) {
            const ModelParams p = ModelParams::make(nu, al);
            CHECK(mx(hamilton_map(hess_K(p)) + 0.5 * (h.E + h.I + 2.0 * p.z * h.J)) <= 1e-14);
            CHECK(commutator_check(p) <= 1e-13);
        }
    }
    Mat4 bad = Mat4::Zero();
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hamilton_map(bad), Error);
}

TEST_CASE("flows against matrix exponentials") {
    for (Alpha al : kAlphas) {
        const HamiltonBasis h = hamilton_basis(al);
        for (double nu : {0.1, 1.0, 10.0}) {
            const ModelParams p = ModelParams::make(nu, al);
            const Mat4 hk = hamilton_map(hess_K(p));
            const Mat4 hq = hamilton_map(hess_Oq());
            CHECK(mx(kappa(0.0, p).matrix - Mat4::Identity()) <= 1e-15);
            CHECK(mx(kappa0(0.0, p).matrix - Mat4::Identity()) <= 1e-15);
            for (double t : {0.01, 0.3, 1.0, 2.2, 3.0}) {
                const Mat4 ref = oracle::series_expm(Mat4(-kI * t * hk));
                const Mat4 got = kappa(t, p).matrix;
                CHECK(mx(got - ref) <= 1e-9 * mx(ref));
                // the determinant is only meaningful while the entries stay moderate
                if (mx(ref) <= 50.0)
                    CHECK(std::abs(std::abs(got.determinant()) - std::abs(ref.determinant())) <= 1e-10);
            }
            for (double d : {0.0, 0.05, 0.5, 1.0}) {
                const Mat4 ref = oracle::series_expm(Mat4(kI * d * hq));
                CHECK(mx(kappa0(d, p).matrix - ref) <= 1e-10 * mx(ref));
                // e^{itE/2} commutes with the kappa0 factor
                const Mat4 pre = std::cosh(0.35) * Mat4::Identity() + kI * std::sinh(0.35) * h.E;
                CHECK(mx(pre * kappa0(d, p).matrix - kappa0(d, p).matrix * pre) <= 1e-14);
            }
            // group law
            for (auto [t, s] : {std::pair{0.4, 1.3}, {1.9, 0.2}, {1.0, 1.0}}) {
                const Mat4 lhs = kappa(t + s, p).matrix, rhs = kappa(t, p).matrix * kappa(s, p).matrix;
                CHECK(mx(lhs - rhs) <= 1e-10 * mx(lhs));
            }
        }
        // lambda branch with nu > 1/4 and alpha = pi/2: C, S are trigonometric
        if (al == Alpha::HalfPi) {
            const ModelParams p = ModelParams::make(4.0, al);
            cplx C, S;
            flow_cs(1.3, p.z, C, S);
            const double r1 = p.r1();
            CHECK(std::abs(C - std::cos(1.3 * r1 / 2)) <= 1e-14);
            CHECK(std::abs(S - std::sin(1.3 * r1 / 2) / r1) <= 1e-14);
        }
    }
    // complex z is admissible for the flow formula
    const HamiltonBasis h = hamilton_basis(Alpha::Zero);
    const cplx z(0.3, 0.7);
    const Mat4 hk = -0.5 * (h.E + h.I + 2.0 * z * h.J);
    CHECK(mx(kappa_matrix(1.1, z, h) - oracle::series_expm(Mat4(-kI * 1.1 * hk))) <= 1e-10);
    // small |t n1| uses the series branch; check continuity through the switch at n1 = 0
    const cplx zc = cplx(0.0, 0.5) * (1.0 + 1e-9);
    const Mat4 hkc = -0.5 * (h.E + h.I + 2.0 * zc * h.J);
    CHECK(mx(kappa_matrix(2.0, zc, h) - oracle::series_expm(Mat4(-kI * 2.0 * hkc))) <= 1e-10);
}

TEST_CASE("quaternion coordinates") {
    for (Alpha al : kAlphas) {
        const HamiltonBasis h = hamilton_basis(al);
        const Mat4 m = cplx(0.3, 1) * Mat4::Identity() + cplx(-2, 0.5) * h.I + cplx(0.1, 0.2) * h.J + 4.0 * h.K;
        const QuaternionCoords q = quaternion_coords(m, h);
        CHECK(q.residual <= 1e-13);
        CHECK(std::abs(q.a - cplx(0.3, 1)) <= 1e-13);
        CHECK(std::abs(q.b - cplx(-2, 0.5)) <= 1e-13);
        CHECK(std::abs(q.c - cplx(0.1, 0.2)) <= 1e-13);
        CHECK(std::abs(q.d - 4.0) <= 1e-13);
    }
}
