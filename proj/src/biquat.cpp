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
#include "biquat.hpp"

#include <algorithm>
#include <cmath>

namespace kfpq::biquat {

namespace {

Biquaternion checked(const Biquaternion &w, const char *op) {
    if (!w.is_finite()) fail(ErrorCode::NonFinite, std::string("biquat::") + op + ": non-finite result");
    return w;
}

// cos(r) and sin(r)/r as functions of r^2 = n; both are entire in n.
void cos_sinc(cplx n, cplx root, cplx &co, cplx &si) {
    if (std::abs(n) < 1e-4) {
        // even series, five terms are well past double precision for |n| < 1e-4
        co = 0.0;
        si = 0.0;
        cplx pw = 1.0;
        double f_even = 1.0, f_odd = 1.0;
        for (int k = 0; k < 6; ++k) {
            co += pw / f_even;
            si += pw / f_odd;
            pw *= -n;
            f_even *= double((2 * k + 1) * (2 * k + 2));
            f_odd *= double((2 * k + 2) * (2 * k + 3));
        }
        return;
    }
    co = std::cos(root);
    si = std::sin(root) / root;
}

Biquaternion exp_with_root(const Biquaternion &w, double branch) {
    const cplx n = w.b * w.b + w.c * w.c + w.d * w.d;
    cplx co, si;
    cos_sinc(n, branch * std::sqrt(n), co, si);
    const cplx ea = std::exp(w.a);
    return checked({ea * co, ea * si * w.b, ea * si * w.c, ea * si * w.d}, "exp");
}

} // namespace

double Biquaternion::max_abs() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

Biquaternion operator+(const Biquaternion &x, const Biquaternion &y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}
Biquaternion operator-(const Biquaternion &x, const Biquaternion &y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}
Biquaternion operator*(cplx s, const Biquaternion &x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }

Biquaternion mul(const Biquaternion &x, const Biquaternion &y) {
    // (a1 + v1)(a2 + v2) = a1 a2 - v1.v2 + a1 v2 + a2 v1 + v1 x v2, bilinear dot and cross
    Biquaternion r;
    r.a = x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d;
    r.b = x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c;
    r.c = x.a * y.c + x.c * y.a + x.d * y.b - x.b * y.d;
    r.d = x.a * y.d + x.d * y.a + x.b * y.c - x.c * y.b;
    return checked(r, "mul");
}

Biquaternion conj(const Biquaternion &w) { return {w.a, -w.b, -w.c, -w.d}; }

cplx norm(const Biquaternion &w) { return w.a * w.a + w.b * w.b + w.c * w.c + w.d * w.d; }

Biquaternion inv(const Biquaternion &w, double rel_tol) {
    const cplx n = norm(w);
    const double m = w.max_abs();
    if (std::abs(n) <= rel_tol * (1.0 + m * m))
        fail(ErrorCode::SingularBiquaternion, "biquat::inv: N(W) vanishes, W is a zero divisor");
    return checked((1.0 / n) * conj(w), "inv");
}

Biquaternion exp(const Biquaternion &w) { return exp_with_root(w, 1.0); }
Biquaternion exp_other_branch(const Biquaternion &w) { return exp_with_root(w, -1.0); }

std::pair<cplx, cplx> spectrum(const Biquaternion &w) {
    // 0 - N keeps a +0 imaginary part, so real negative N(v) lands on the upper branch
    const cplx r = std::sqrt(cplx(0.0) - (w.b * w.b + w.c * w.c + w.d * w.d));
    return {w.a + r, w.a - r};
}

Mat2 to_matrix(const Biquaternion &w) {
    Mat2 m;
    m << w.a + kI * w.b, w.c + kI * w.d, -w.c + kI * w.d, w.a - kI * w.b;
    return m;
}

Biquaternion from_matrix(const Mat2 &m) {
    Biquaternion w;
    w.a = 0.5 * (m(0, 0) + m(1, 1));
    w.b = -0.5 * kI * (m(0, 0) - m(1, 1));
    w.c = 0.5 * (m(0, 1) - m(1, 0));
    w.d = -0.5 * kI * (m(0, 1) + m(1, 0));
    return w;
}

} // namespace kfpq::biquat
