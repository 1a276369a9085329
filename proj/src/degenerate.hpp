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
#pragma once
#include "common.hpp"

// The linear-potential model K_1 = p d_q - lambda1 d_p + (D_p^2 + p^2 - 1)/2, reduced fiberwise in xi_q.
namespace kfpq::degenerate {

struct FiberParams {
    double lambda1 = 0.0, xi_q = 0.0, b = 0.0; // b = sqrt(xi_q^2 + lambda1^2)
    static FiberParams make(double lambda1, double xi_q);
};

// u(t) = tanh(t/2) - t/2, with a series near 0
double u_of_t(double t);
// ||e^{-t P_b}|| = exp(((ch t - 1)/sh t) b^2)
double fiber_norm(double t, double b);
// b^2 e^{u(t) b^2} = ||b^2 e^{-t (P_b + b^2/2)}||
double fiber_weighted(double t, double b);
// -t^3 e^{u}/u, F(0) = 24
double F(double t);

struct Richardson {
    double value;
    double estimate_error; // difference between the last two table entries
};
// Extrapolates F to 0 from h, h/2, h/4 eliminating the t^2 and t^3 terms.
Richardson F_at_zero(double h = 1e-2);

// exact sup over b >= |lambda1| of b^2 e^{u b^2}, and where it is attained
struct FiberSup {
    double value, b_sq;
    bool interior; // maximizer -1/u admissible
};
FiberSup fiber_sup(double t, double lambda1);
// numeric sup by golden section in log b^2 over b^2 >= lambda1^2
FiberSup fiber_sup_numeric(double t, double lambda1);

inline constexpr double kT0 = 0.5;
// F(t)/t^3 on (0, 1]; (F(t0)/t0^3) e^{-t} on [1, inf)
double decay_bound_degenerate(double t, double lambda1);
// e^{-t} sup_b b^2 e^{u b^2}: ||(D_q^2 + lambda1^2) e^{-t(K_1 + 1)}|| if the fiber formula is exact
double decay_exact_degenerate(double t, double lambda1);

// Symbol-level residual of the (p, xi_p) rotation taking i(p xi_q - lambda1 xi_p) to i b p.
double fiber_reduction_check(double lambda1, double xi_q);
// rotation angle theta with (cos, sin) = (xi_q, -lambda1)/b; 0 when b = 0
double fiber_angle(double lambda1, double xi_q);

} // namespace kfpq::degenerate
