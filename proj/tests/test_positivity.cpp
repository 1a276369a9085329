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

#include <random>

#include "positivity.hpp"

using namespace kfpq;
using namespace kfpq::positivity;
using symbols::Alpha;

namespace {
const Alpha kAlphas[] = {Alpha::Zero, Alpha::HalfPi};
}

TEST_CASE("closed-form difference matches explicit flow products") {
    std::mt19937_64 g(77);
    std::uniform_real_distribution<double> ut(0.05, 3.0), ud(-0.5, 1.0), un(0.1, 10.0);
    for (int n = 0; n < 60; ++n) {
        const ModelParams p = ModelParams::make(un(g), kAlphas[n % 2]);
        const double t = ut(g), d = ud(g);
        for (int sg : {1, -1}) {
            const Mat2 c = hermitian_difference(t, d, p, sg);
            const Mat2 r = hermitian_difference_direct(t, d, p, sg);
            CHECK((c - r).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, r.cwiseAbs().maxCoeff()));
            CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() <= 1e-11 * std::max(1.0, r.cwiseAbs().maxCoeff()));
        }
    }
    for (Alpha al : kAlphas) {
        const ModelParams p = ModelParams::make(2.0, al);
        CHECK(hermitian_difference(0.0, 0.0, p, 1).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK(hermitian_difference(0.0, 0.0, p, -1).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("coefficient determinant and expanded determinant") {
    for (Alpha al : kAlphas)
        for (double nu : {0.5, 1.0, 4.0})
            for (double t : {0.1, 0.4, 1.0})
                for (double d : {0.0, 0.01, 0.2})
                    for (int sg : {1, -1}) {
                        const ModelParams p = ModelParams::make(nu, al);
                        const PositivityReport r = report(t, d, p, sg);
                        const cplx det = hermitian_difference(t, d, p, sg).determinant();
                        const cplx from_coeff = r.det_value * std::exp(-2.0 * sg * t);
                        const double scale = std::max(std::abs(det), 1e-3 * std::exp(-2.0 * sg * t));
                        CHECK(std::abs(from_coeff - det) <= 1e-9 * scale);
                        CHECK(std::abs(r.det_closed - det) <= 1e-9 * scale);
                    }
}

TEST_CASE("the free flow is positive") {
    for (double nu : {0.5, 1.0, 4.0, 25.0})
        for (double t : {0.05, 0.5, 2.0})
            for (int sg : {1, -1}) CHECK(report(t, 0.0, ModelParams::make(nu, Alpha::Zero), sg).is_positive);
}

TEST_CASE("delta0 cancels the determinant and is sign independent") {
    for (Alpha al : kAlphas)
        for (double nu : {0.5, 1.0, 4.0, 25.0})
            for (double t : {0.05, 0.3, 1.0, 2.0, 3.0}) {
                const ModelParams p = ModelParams::make(nu, al);
                const double d0 = delta0(t, p);
                CHECK(d0 > 0.0);
                const auto [dp, dm] = delta0_per_sign(t, p);
                CHECK(std::abs(dp - d0) <= 1e-10);
                CHECK(std::abs(dm - d0) <= 1e-10);
                for (int sg : {1, -1}) {
                    const PositivityReport r = report(t, d0, p, sg);
                    const double fro2 = hermitian_difference(t, d0, p, sg).squaredNorm();
                    CHECK(std::abs(r.det_closed) <= 1e-8 * (1.0 + fro2));
                    CHECK(r.min_eigenvalue >= -1e-8);
                    CHECK(report(t, 0.5 * d0, p, sg).is_positive);
                }
            }
}

TEST_CASE("delta0 against a numeric root on exponentiated flows") {
    for (Alpha al : kAlphas)
        for (double nu : {0.5, 1.0, 4.0})
            for (double t : {0.1, 0.5, 1.0, 2.0}) {
                const ModelParams p = ModelParams::make(nu, al);
                const double d0 = delta0(t, p);
                for (int sg : {1, -1}) CHECK(std::abs(delta0_numeric(t, p, sg) - d0) <= 1e-6 * d0);
            }
}

TEST_CASE("delta0 small-time behaviour") {
    for (Alpha al : kAlphas)
        for (double nu : {0.5, 1.0, 4.0, 25.0, 1e4}) {
            const ModelParams p = ModelParams::make(nu, al);
            const double t = 1e-2 / (1.0 + std::sqrt(nu));
            const double ratio = delta0(t, p) / (nu * t * t * t / 12.0);
            CHECK(ratio >= 0.98);
            CHECK(ratio <= 1.02);
            // increasing on a short initial interval
            double prev = 0.0;
            for (int i = 1; i <= 40; ++i) {
                const double d = delta0(t * i / 4.0, p);
                CHECK(d > prev);
                prev = d;
            }
        }
}

TEST_CASE("delta0 lower bound fit") {
    for (Alpha al : kAlphas) {
        double prev = INFINITY;
        for (double nu : {1.0, 10.0, 100.0, 1e4}) {
            const LowerBoundFit f = delta0_lower_bound_check(ModelParams::make(nu, al), 0.5);
            CHECK(f.pass);
            CHECK(f.c_fit > 0.0);
            // for alpha = pi/2 the ratio approaches 1/12 from above
            CHECK(f.c_fit <= (1.0 / 12.0) * (1.0 + 1e-8));
        }
        const ModelParams p = ModelParams::make(1.0, al);
        for (double e : {0.2, 0.5, 0.8, 0.95}) {
            const double c = delta0_lower_bound_check(p, e).c_fit;
            CHECK(c <= prev * (1.0 + 1e-9));
            prev = c;
        }
    }
}

TEST_CASE("decay bound shape") {
    for (Alpha al : kAlphas) {
        double worst = 0.0;
        for (double nu : {1.0, 100.0, 1e4}) {
            const ModelParams p = ModelParams::make(nu, al);
            for (int i = 0; i < 200; ++i) {
                const double t = 5.0 * std::pow(1e-4, double(i) / 199);
                worst = std::max(worst, decay_bound_flow(t, p) * std::pow(t, 1.5));
            }
            const double t0 = kEpsilon0 / (1.0 + std::sqrt(nu));
            const double small = decay_bound_flow_small(t0 * (1 + 1e-12), p);
            const double large = decay_bound_flow(t0 * (1 + 1e-12), p);
            CHECK(small / large <= 4.0);
            CHECK(large / small <= 4.0);
        }
        // a single constant serves every nu
        CHECK(worst < 20.0);
    }
    CHECK(sup_factor(1e-3) <= 1.0 / std::sqrt(2.0 * std::exp(1.0)) + 1e-15);
}
