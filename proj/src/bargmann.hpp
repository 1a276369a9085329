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
#include <cstdint>
#include <vector>

#include "symbols.hpp"

// Bargmann-side reduction of K_{nu, pi/2}: the matrix M of the transported
// operator, the Gram matrix of e^{tM}, and the weighted quotient Q_t.
namespace kfpq::bargmann {

using symbols::ModelParams;
using Vec2 = Eigen::Vector2cd;

struct BargmannReduction {
    Mat4 H;                       // Hamilton map of the adjoint operator
    std::array<cplx, 4> lambdas;  // (eps1, eps2) = (+,+), (+,-), (-,+), (-,-)
    Mat4 X;                       // eigenvectors as columns, same order
    Mat2 A_plus, A_minus, B, M, C;
    double eig_residual;          // max ||H X - X Lambda||
    double identification_residual;
};

BargmannReduction reduce(const ModelParams &p);

// C(t) = cos(t r1/2), S(t) = sin(t r1/2)/r1
void trig_cs(double t, const ModelParams &p, double &C, double &S);

Mat2 pauli(int k);
Mat2 exp_tM(double t, const ModelParams &p);
Mat2 gram(double t, const ModelParams &p); // (e^{tM})^* e^{tM}

struct GramEigen {
    double lambda_plus, lambda_minus, lambda_minus_argsh;
};
GramEigen gram_eigenvalues(double t, const ModelParams &p);

inline const double kC0 = 0.36787944117144233; // sup sigma e^{-sigma} = 1/e

struct WeightedQuotient {
    double t;
    double Q_t_eq;
    Vec2 e_q_prime;
    double S_pq, S_pp; // S_t(e_p, e_q), S_t(e_p, e_p)
    double lambda_minus;
    double sup_value; // 2 c0 / Q_t(e'_q)
};

WeightedQuotient quotient(double t, const ModelParams &p);
// Q_t(e'_q) from its closed form 4(sh^2(t/2) - S^2)/((1-e^{-t}) + 2S^2 + 2SC)
double quotient_closed(double t, const ModelParams &p);

// sup over z in C^2 of |z_q|^2 e^{-Q_t(z)/2}, by a radial search in the adapted basis
double sup_radial(double t, const ModelParams &p);
// same supremum by an unstructured Nelder-Mead search over R^4 from seeded random starts
double sup_unstructured(double t, const ModelParams &p, std::uint64_t seed);

struct RegimeFit {
    double c_small;        // sup of nu t^3 / Q over t <= 4/r1
    double c_large;        // sup of e^t / Q over t >= 4/r1
    double literal_large;  // sup of (1/Q)/(2 e^{-t}) over t >= 4/r1; <= 1 would confirm 1/Q <= 2e^{-t}
    double chain_large;    // sup of (1/Q)/(2/sh^2(t/2)) over t >= 4/r1
};
RegimeFit quotient_regimes(const std::vector<double> &nus, double t_max = 10.0, int n = 400);

// bound for || sqrt(nu) a_q^* e^{-t(K + nu^{1/3})} ||, nu > 1
double remainder_bound(double t, const ModelParams &p);
// (3/2)^{3/2} e^{-3/2} = max over s >= 0 of s^{3/2} e^{-s}
double envelope_constant();

} // namespace kfpq::bargmann
