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

#include <cmath>

#include "degenerate.hpp"

using namespace kfpq;
using namespace kfpq::degenerate;

TEST_CASE("degenerate: u(t)") {
    for (int i = 1; i <= 400; ++i) {
        const double t = 0.05 * i;
        CHECK(u_of_t(t) < 0.0);
        CHECK(std::abs((std::cosh(t) - 1.0) / std::sinh(t) - std::tanh(0.5 * t)) <= 1e-13);
    }
    for (int i = 1; i <= 100; ++i) {
        const double t = 0.5 * i / 100.0;
        CHECK(std::abs(u_of_t(t) + t * t * t / 24.0) <= 0.05 * std::pow(t, 4));
    }
    // series and direct evaluation meet at the switch
    for (double t : {0.15, 0.199, 0.2, 0.21}) {
        const long double x = 0.5L * t;
        const double direct = double(std::tanh(x) - x);
        CHECK(std::abs(u_of_t(t) - direct) <= 1e-11 * std::abs(direct));
    }
    CHECK(std::abs(u_of_t(1e-3) + 1e-9 / 24.0 - 1e-15 / 240.0) <= 1e-14 * 1e-9 / 24.0);
    CHECK(fiber_weighted(0.7, 0.0) == 0.0);
}

TEST_CASE("degenerate: F and its limit") {
    const Richardson r = F_at_zero(1e-2);
    CHECK(std::abs(r.value - 24.0) <= 1e-6);
    double sup = 0.0;
    for (int i = 1; i <= 1000; ++i) sup = std::max(sup, F(i / 1000.0));
    CHECK(sup <= 26.0);
    for (double t : {0.1, 0.5, 1.0}) {
        const FiberSup a = fiber_sup(t, 0.0);
        const FiberSup n = fiber_sup_numeric(t, 0.0);
        CHECK(a.interior);
        CHECK(std::abs(a.b_sq + 1.0 / u_of_t(t)) <= 1e-14 * a.b_sq);
        CHECK(std::abs(n.b_sq - a.b_sq) <= 1e-8 * a.b_sq);
        CHECK(std::abs(n.value - a.value) <= 1e-12 * a.value);
        CHECK(a.value * t * t * t <= F(t));
        // a dense scan never beats the closed form
        double scan = 0.0;
        for (int k = 1; k <= 20000; ++k) {
            const double b = 3.0 * k / 20000.0 * std::sqrt(a.b_sq);
            scan = std::max(scan, fiber_weighted(t, b));
        }
        CHECK(scan <= a.value * (1.0 + 1e-14));
        CHECK(scan >= a.value * (1.0 - 1e-6));
    }
}

TEST_CASE("degenerate: sup over xi_q with lambda1") {
    for (double t : {0.1, 0.5, 1.0, 3.0})
        for (double l : {0.0, 1.0, 10.0, 100.0}) {
            const FiberSup a = fiber_sup(t, l);
            const FiberSup n = fiber_sup_numeric(t, l);
            CHECK(std::abs(n.value - a.value) <= 1e-12 * a.value);
            CHECK(a.interior == (-1.0 / u_of_t(t) >= l * l));
            if (!a.interior) CHECK(a.b_sq == doctest::Approx(l * l).epsilon(1e-15));
        }
}

TEST_CASE("degenerate: decay bound") {
    double worst = 0.0;
    for (double l : {0.0, 1.0, 10.0})
        for (int i = 1; i <= 500; ++i) {
            const double t = 5.0 * i / 500.0;
            const double b = decay_bound_degenerate(t, l);
            worst = std::max(worst, b * t * t * t);
            CHECK(decay_exact_degenerate(t, l) <= b);
        }
    CHECK(worst <= 300.0);
    const double lo = decay_bound_degenerate(1.0, 0.0), hi = decay_bound_degenerate(std::nextafter(1.0, 2.0), 0.0);
    CHECK(std::max(lo / hi, hi / lo) <= 4.0);
}

TEST_CASE("degenerate: fiber rotation") {
    for (double l : {0.0, 1.0, 5.0})
        for (double x : {0.0, 1.0, 5.0}) CHECK(fiber_reduction_check(l, x) <= 1e-12);
    CHECK(fiber_angle(0.0, 2.0) == 0.0);
    CHECK(fiber_reduction_check(-3.0, -0.5) <= 1e-12);
    CHECK(FiberParams::make(3.0, 4.0).b == 5.0);
}
