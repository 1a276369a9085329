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
#include <cmath>
#include <complex>

#include "common.hpp"

// Exact norm of e^{-t K_{nu,0}}, the resolvent integral and the explicit
// quasi-mode u = (1/L) int_0^L e^{s X_0} phi ds.
namespace kfpq::exactnorms {

struct NormResult {
    double t = 0.0;
    double norm = 1.0;    // e^{-Argsh S(t)}
    double norm_mu = 1.0; // (mu1 / mu2)^{1/4} from the biquaternion route
    cplx mu1, mu2;        // eigenvalues of conj(kappa)^{-1} kappa, mu1 <= mu2
    double n_v = 0.0;     // -N(v), the vector part norm of the product
};

// S(t) = sh(t n1/2)/n1, n1 = sqrt(4 nu + 1)
double flow_S(double t, double nu);
NormResult semigroup_norm(double t, double nu);

struct ResolventResult {
    double integral;
    double c_ratio;  // integral / (log nu / sqrt nu)
    double abs_err;  // quadrature estimate plus analytic tail
    double log_bound; // 2 (log nu / n1 + 1/nu)
};
ResolventResult resolvent_bound(double nu);
// Same integral through the mu route on [0, inf) with QAGIU; cross-check only.
double resolvent_integral_mu(double nu, double &abs_err);

struct OptimalityWitness {
    double nu, L;
    double overlap;        // <phi_L, phi> = 1/ch L
    double x0_norm_sq;
    double u_norm_sq_lower;
    double u_norm_sq_exact; // (2/L^2) int_0^L (L - s)/ch s ds
    double op_bound_sq;
    double rayleigh_bound;
};
OptimalityWitness optimality_witness(double nu);

// ||O_p phi_s||^2
inline double op_phi_norm_sq(double s) { return 0.25 * std::cosh(4.0 * s); }

struct GridSpec {
    int nx = 400, ny = 400; // points across the narrow and wide Gaussian directions
    int ns = 48;            // Gauss-Legendre nodes in s
    double width = 8.5;     // half extents in standard deviations
};

struct WitnessNumeric {
    double rayleigh;      // ||K u||^2 / ||u||^2 with K = O_p + sqrt(nu) X_0
    double u_norm_sq, x0_norm_sq, op_norm_sq;
    double refinement_change; // relative change of rayleigh against the doubled grid
};
// Raises GridUnderResolved when the doubled grid moves the quotient by more than 1%.
WitnessNumeric witness_rayleigh_numeric(double nu, const GridSpec &grid = {});

} // namespace kfpq::exactnorms
