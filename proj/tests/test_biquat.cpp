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

#include "biquat.hpp"
#include "oracles.hpp"

using namespace kfpq;
using namespace kfpq::biquat;

namespace {

Biquaternion random_bq(std::mt19937_64 &g, double r) {
    return {oracle::rand_c(g, r), oracle::rand_c(g, r), oracle::rand_c(g, r), oracle::rand_c(g, r)};
}

double dist(const Biquaternion &x, const Biquaternion &y) { return (x - y).max_abs(); }

} // namespace

TEST_CASE("unit products") {
    CHECK(dist(mul(Biquaternion::unit_i(), Biquaternion::unit_j()), Biquaternion::unit_k()) == 0.0);
    CHECK(dist(mul(Biquaternion::unit_j(), Biquaternion::unit_i()), -1.0 * Biquaternion::unit_k()) == 0.0);
    CHECK(dist(mul(Biquaternion::unit_j(), Biquaternion::unit_k()), Biquaternion::unit_i()) == 0.0);
    CHECK(dist(mul(Biquaternion::unit_k(), Biquaternion::unit_i()), Biquaternion::unit_j()) == 0.0);
    const Biquaternion ijk = Biquaternion::unit_i() * Biquaternion::unit_j() * Biquaternion::unit_k();
    CHECK(dist(ijk, Biquaternion::scalar(-1.0)) == 0.0);
}

TEST_CASE("matrix representation is a ring homomorphism") {
    std::mt19937_64 g(11);
    for (int n = 0; n < 100; ++n) {
        const Biquaternion x = random_bq(g, 2.0), y = random_bq(g, 2.0);
        const Mat2 fx = to_matrix(x), fy = to_matrix(y);
        const double scale = 1.0 + fx.norm() * fy.norm();
        CHECK((to_matrix(x * y) - fx * fy).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        CHECK(dist(Biquaternion::scalar(1.0) * x, x) == 0.0);
        CHECK(dist(from_matrix(fx), x) <= 1e-15 * (1.0 + x.max_abs()));
        const cplx det = fx.determinant();
        CHECK(std::abs(norm(x) - det) <= 1e-12 * std::max(1.0, std::abs(det)));
        CHECK(std::abs(norm(x * y) - norm(x) * norm(y)) <= 1e-12 * (1.0 + std::abs(norm(x) * norm(y))));
        CHECK(dist(conj(conj(x)), x) == 0.0);
    }
    Mat2 want = Mat2::Zero();
    want(0, 0) = kI;
    want(1, 1) = -kI;
    CHECK((to_matrix(Biquaternion::unit_i()) - want).norm() == 0.0);
    CHECK((to_matrix(Biquaternion::scalar(1.0)) - Mat2::Identity()).norm() == 0.0);
}

TEST_CASE("norm, conjugate and inverse") {
    CHECK(std::abs(norm({1.0, 1.0, 1.0, 1.0}) - 4.0) == 0.0);
    CHECK(dist(conj(Biquaternion::unit_i()), -1.0 * Biquaternion::unit_i()) == 0.0);
    CHECK(dist(conj(Biquaternion::scalar(1.0)), Biquaternion::scalar(1.0)) == 0.0);
    CHECK(dist(inv(Biquaternion::scalar(1.0)), Biquaternion::scalar(1.0)) == 0.0);
    CHECK(dist(inv(Biquaternion::unit_k()), -1.0 * Biquaternion::unit_k()) == 0.0);
    try {
        inv({1.0, kI, 0.0, 0.0});
        FAIL("zero divisor accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::SingularBiquaternion);
    }
    std::mt19937_64 g(5);
    for (int n = 0; n < 50; ++n) {
        const Biquaternion x = random_bq(g, 1.5);
        CHECK(dist(x * inv(x), Biquaternion::scalar(1.0)) <= 1e-10);
    }
}

TEST_CASE("exponential") {
    CHECK(dist(biquat::exp({}), Biquaternion::scalar(1.0)) == 0.0);
    for (double th : {0.3, 1.0, 2.5}) {
        const Biquaternion e = biquat::exp(th * Biquaternion::unit_k());
        CHECK(dist(e, {std::cos(th), 0.0, 0.0, std::sin(th)}) <= 1e-15);
    }
    std::mt19937_64 g(2024);
    for (int n = 0; n < 200; ++n) {
        const Biquaternion w = random_bq(g, 2.0);
        const Mat2 ref = oracle::series_expm(to_matrix(w));
        CHECK((to_matrix(biquat::exp(w)) - ref).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, ref.norm()));
        CHECK(dist(biquat::exp(w), exp_other_branch(w)) <= 1e-13 * std::max(1.0, biquat::exp(w).max_abs()));
        // commuting case: parallel vector parts
        const Biquaternion u{oracle::rand_c(g, 1.0), w.b, w.c, w.d};
        const Biquaternion v = cplx(0.7, -0.2) * w;
        const Biquaternion lhs = biquat::exp(u) * biquat::exp(v), rhs = biquat::exp(u + v);
        CHECK(dist(lhs, rhs) <= 1e-10 * std::max(1.0, rhs.max_abs()));
        // spectral mapping
        const auto sw = spectrum(w);
        const auto se = spectrum(biquat::exp(w));
        const cplx e1 = std::exp(sw.first), e2 = std::exp(sw.second);
        const double tol = 1e-10 * std::max(1.0, std::abs(e1) + std::abs(e2));
        const bool direct = std::abs(se.first - e1) <= tol && std::abs(se.second - e2) <= tol;
        const bool swapped = std::abs(se.first - e2) <= tol && std::abs(se.second - e1) <= tol;
        CHECK((direct || swapped));
    }
}

TEST_CASE("exponential near the nilpotent boundary") {
    // N(v) = 0 with v != 0: exp is 1 + v times e^a
    const Biquaternion w{0.3, 1.0, kI, 0.0};
    const Biquaternion e = biquat::exp(w);
    const double ea = std::exp(0.3);
    CHECK(dist(e, {ea, ea, ea * kI, 0.0}) <= 1e-14);
    const Mat2 ref = oracle::series_expm(to_matrix(w));
    CHECK((to_matrix(e) - ref).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("spectrum") {
    const auto s = spectrum({2.0, 3.0, 0.0, 0.0});
    CHECK(std::abs(s.first - cplx(2.0, 3.0)) <= 1e-15);
    CHECK(std::abs(s.second - cplx(2.0, -3.0)) <= 1e-15);
    const auto s0 = spectrum(Biquaternion::scalar(cplx(1.5, 0.5)));
    CHECK(s0.first == s0.second);
    std::mt19937_64 g(9);
    for (int n = 0; n < 100; ++n) {
        const Biquaternion w = random_bq(g, 2.0);
        const auto sp = spectrum(w);
        Eigen::ComplexEigenSolver<Mat2> es(to_matrix(w));
        const cplx l0 = es.eigenvalues()(0), l1 = es.eigenvalues()(1);
        const double d1 = std::abs(sp.first - l0) + std::abs(sp.second - l1);
        const double d2 = std::abs(sp.first - l1) + std::abs(sp.second - l0);
        CHECK(std::min(d1, d2) <= 1e-10);
    }
}
