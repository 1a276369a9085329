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
#include <utility>
#include <vector>

#include "symbols.hpp"

namespace kfpq::positivity {

using symbols::ModelParams;

struct PositivityReport {
    double t = 0.0, delta = 0.0;
    int sign = 1;
    cplx a, b, c, d;      // matrix = e^{-+t}(a + b I~ + c J~ + d K~)
    cplx det_value;       // a^2 + b^2 + c^2 + d^2
    double det_closed;    // determinant of the matrix from the expanded scalar formula
    double min_eigenvalue;
    double max_eigenvalue;
    bool is_positive;
};

// T_+-^* (k0(delta) i sigma k0(delta) - k(-t)^* i sigma k(-t)) T_+-, from the closed forms.
Mat2 hermitian_difference(double t, double delta, const ModelParams &p, int sign);
// Same matrix built from explicit 4x4 flow products.
Mat2 hermitian_difference_direct(double t, double delta, const ModelParams &p, int sign);
PositivityReport report(double t, double delta, const ModelParams &p, int sign);
// Zero of the smallest eigenvalue of the compressed difference, with both flows taken
// from 4x4 matrix exponentials and the root bracketed by doubling from 1e-9; cross-check only.
double delta0_numeric(double t, const ModelParams &p, int sign);

// A(t) = 2 S^2 - (ch t - 1), evaluated without cancellation for small t.
double a_of_t(double t, const ModelParams &p);
double delta0(double t, const ModelParams &p);
// Zero of the expanded determinant solved separately for the + and - compressions.
std::pair<double, double> delta0_per_sign(double t, const ModelParams &p);

struct LowerBoundFit {
    double c_fit;
    bool pass;
};
LowerBoundFit delta0_lower_bound_check(const ModelParams &p, double epsilon0 = 0.5);

inline constexpr double kEpsilon0 = 0.5;
// sup over n >= 0 of sqrt(d (n + 1/2)) e^{-d (n + 1/2)}
double sup_factor(double d);
double decay_bound_flow(double t, const ModelParams &p, double epsilon0 = kEpsilon0);
double decay_bound_flow_small(double t, const ModelParams &p);

} // namespace kfpq::positivity
