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
#include <array>
#include <utility>

#include "common.hpp"

// Biquaternions a + b i + c j + d k with complex coefficients. The quaternion
// units i, j, k are distinct from the complex unit.
namespace kfpq::biquat {

struct Biquaternion {
    cplx a{}, b{}, c{}, d{};

    static Biquaternion scalar(cplx s) { return {s, 0.0, 0.0, 0.0}; }
    static Biquaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
    static Biquaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
    static Biquaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

    Biquaternion vector_part() const { return {0.0, b, c, d}; }
    double max_abs() const;
    bool is_finite() const { return finite(a) && finite(b) && finite(c) && finite(d); }
};

Biquaternion operator+(const Biquaternion &x, const Biquaternion &y);
Biquaternion operator-(const Biquaternion &x, const Biquaternion &y);
Biquaternion operator*(cplx s, const Biquaternion &x);

Biquaternion mul(const Biquaternion &x, const Biquaternion &y);
inline Biquaternion operator*(const Biquaternion &x, const Biquaternion &y) { return mul(x, y); }

Biquaternion conj(const Biquaternion &w);
// a^2 + b^2 + c^2 + d^2, complex valued; not a metric.
cplx norm(const Biquaternion &w);
Biquaternion inv(const Biquaternion &w, double rel_tol = 1e-12);
Biquaternion exp(const Biquaternion &w);
// Same as exp but with the other square root of N(v); used to test branch independence.
Biquaternion exp_other_branch(const Biquaternion &w);
std::pair<cplx, cplx> spectrum(const Biquaternion &w);

Mat2 to_matrix(const Biquaternion &w);
Biquaternion from_matrix(const Mat2 &m);

} // namespace kfpq::biquat
