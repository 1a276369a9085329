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
// Independent reference computations used by the tests only.
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// Truncated Taylor series with scaling and squaring, no Pade.
template <class M> M series_expm(const M &a) {
    const double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    if (nrm > 0.5) s = int(std::ceil(std::log2(nrm / 0.5)));
    const M b = a / std::pow(2.0, s);
    M term = M::Identity(a.rows(), a.cols());
    M sum = term;
    for (int k = 1; k < 40; ++k) {
        term = (term * b) / double(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

inline cplx rand_c(std::mt19937_64 &g, double r) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // modulus at most r
    for (;;) {
        cplx z(u(g), u(g));
        if (std::abs(z) <= 1.0) return r * z;
    }
}

// Composite Gauss-Legendre on [a, b] with m panels of 20 nodes.
template <class F> double gauss_legendre(F f, double a, double b, int m = 64) {
    static const double x[10] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
                                 0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                                 0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
                                 0.9931285991850949};
    static const double w[10] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
                                 0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
                                 0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
                                 0.0176140071391521};
    double sum = 0.0;
    const double h = (b - a) / m;
    for (int p = 0; p < m; ++p) {
        const double c = a + (p + 0.5) * h, r = 0.5 * h;
        for (int i = 0; i < 10; ++i) sum += r * w[i] * (f(c + r * x[i]) + f(c - r * x[i]));
    }
    return sum;
}

} // namespace oracle
