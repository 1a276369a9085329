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

#include "bargmann.hpp"
#include "oracles.hpp"

using namespace kfpq;
using namespace kfpq::bargmann;
using symbols::Alpha;

namespace {
ModelParams mp(double nu) { return ModelParams::make(nu, Alpha::HalfPi); }
double mx(const Mat2 &m) { return m.cwiseAbs().maxCoeff(); }
} // namespace

TEST_CASE("reduction to the transported matrix") {
    for (double nu : {0.5, 1.0, 10.0}) {
        const BargmannReduction r = reduce(mp(nu));
        const double sq = std::sqrt(nu);
        Mat4 want;
        want << 0, -kI * sq, 0, 0, kI * sq, 0, 0, 1, 0, 0, 0, -kI * sq, 0, -1, kI * sq, 0;
        CHECK((r.H - want).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK(r.eig_residual <= 1e-12 * (1.0 + nu));
        CHECK(mx(r.A_plus - kI * Mat2::Identity()) <= 1e-12);
        CHECK(mx(r.A_minus + kI * Mat2::Identity()) <= 1e-12);
        CHECK(r.identification_residual <= 1e-12);
        Mat2 m;
        m << 0, -sq, sq, 1;
        CHECK(mx(r.M - m) <= 1e-12);
        CHECK(mx(r.C) <= 1e-12);
    }
    CHECK_THROWS_AS(reduce(mp(0.25)), Error);
    CHECK_THROWS_AS(reduce(ModelParams::make(1.0, Alpha::Zero)), Error);
}

TEST_CASE("Pauli algebra and the exponential of tM") {
    const Mat2 id = Mat2::Identity();
    for (int k = 1; k <= 3; ++k) CHECK(mx(pauli(k) * pauli(k) - id) == 0.0);
    CHECK(mx(-kI * pauli(1) * pauli(2) * pauli(3) - id) == 0.0);
    for (double nu : {0.3, 1.0, 10.0, 1e3})
        for (double t : {0.01, 0.5, 2.0, 7.0}) {
            const ModelParams p = mp(nu);
            const double sq = std::sqrt(nu);
            Mat2 m;
            m << 0, -sq, sq, 1;
            const Mat2 ref = oracle::series_expm(Mat2(t * m));
            CHECK(mx(exp_tM(t, p) - ref) <= 1e-11 * mx(ref));
            CHECK(std::abs(exp_tM(t, p).determinant() - std::exp(t * m.trace())) <= 1e-12 * std::exp(t));
            CHECK(mx(gram(t, p) - ref.adjoint() * ref) <= 1e-11 * mx(ref.adjoint() * ref));
            double C, S;
            trig_cs(t, p, C, S);
            CHECK(std::abs((4 * nu - 1) * S * S + C * C - 1.0) <= 1e-12);
        }
}

TEST_CASE("Gram eigenvalues") {
    for (double nu : {0.3, 1.0, 10.0, 1e3})
        for (int i = 1; i <= 100; ++i) {
            const double t = 10.0 * i / 100.0;
            const ModelParams p = mp(nu);
            const GramEigen g = gram_eigenvalues(t, p);
            CHECK(std::abs(g.lambda_minus - g.lambda_minus_argsh) <= 1e-11 * g.lambda_plus);
            CHECK(g.lambda_minus > 1.0);
            double C, S;
            trig_cs(t, p, C, S);
            CHECK(std::sinh(0.5 * t) - std::abs(S) > 0.0);
            if (i % 10 == 0) {
                Eigen::SelfAdjointEigenSolver<Mat2> es(gram(t, p));
                CHECK(std::abs(es.eigenvalues()(0) - g.lambda_minus) <= 1e-10 * g.lambda_plus);
                CHECK(std::abs(es.eigenvalues()(1) - g.lambda_plus) <= 1e-10 * g.lambda_plus);
            }
        }
}

TEST_CASE("weighted quotient") {
    for (double nu : {0.5, 2.0, 30.0})
        for (double t : {0.05, 0.4, 1.5, 4.0}) {
            const ModelParams p = mp(nu);
            const WeightedQuotient q = quotient(t, p);
            const Mat2 g = gram(t, p) - Mat2::Identity();
            // Q_t orthogonality of the adapted basis
            const Vec2 ep(0.0, 1.0);
            CHECK(std::abs((ep.adjoint() * g * q.e_q_prime)(0)) <= 1e-11 * g.norm());
            CHECK(std::abs(q.S_pq - g(1, 0).real()) <= 1e-11 * g.norm());
            CHECK(std::abs(q.S_pp - g(1, 1).real()) <= 1e-11 * g.norm());
            const double qd = (q.e_q_prime.adjoint() * g * q.e_q_prime)(0).real();
            CHECK(std::abs(qd - q.Q_t_eq) <= 1e-10 * qd);
            CHECK(q.Q_t_eq > 0.0);
            CHECK(q.lambda_minus > 1.0);
            CHECK(std::abs(q.sup_value * q.Q_t_eq - 2.0 * kC0) <= 1e-15);
            CHECK(std::abs(sup_radial(t, p) - q.sup_value) <= 1e-6 * q.sup_value);
            CHECK(std::abs(sup_unstructured(t, p, 42) - q.sup_value) <= 1e-6 * q.sup_value);
        }
}

TEST_CASE("quotient regimes") {
    const RegimeFit f = quotient_regimes({1.0, 1e2, 1e4});
    // the small-time constant tends to 6 as t -> 0
    CHECK(f.c_small >= 6.0 * (1 - 1e-6));
    CHECK(f.c_small <= 6.1);
    CHECK(std::isfinite(f.c_large));
    CHECK(f.c_large > 0.0);
    // the intermediate chain bound 1/Q <= 2/sh^2(t/2) holds
    CHECK(f.chain_large <= 1.0);
}

TEST_CASE("remainder bound") {
    CHECK(envelope_constant() == doctest::Approx(std::pow(1.5, 1.5) * std::exp(-1.5)));
    double best = 0.0;
    for (int i = 0; i <= 1000; ++i) best = std::max(best, std::pow(0.005 * i, 1.5) * std::exp(-0.005 * i));
    CHECK(best <= envelope_constant());
    CHECK(best >= envelope_constant() * (1 - 1e-5));
    double worst = 0.0;
    for (double nu : {2.0, 1e2, 1e6})
        for (int i = 0; i < 300; ++i) {
            const double t = 10.0 * std::pow(1e-5, double(i) / 299);
            worst = std::max(worst, remainder_bound(t, mp(nu)) * std::pow(t, 1.5));
        }
    CHECK(worst < 10.0);
    CHECK_THROWS_AS(remainder_bound(1.0, mp(1.0)), Error);
}
