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
#include <vector>

#include "common.hpp"

// Quadratic symbols in the variables (q, p, xi_q, xi_p), their Hamilton maps,
// and the closed-form flows of the model operator K = O_p + z X.
namespace kfpq::symbols {

enum class PotentialKind { NonDegenerate, Degenerate };

struct PotentialSpec {
    PotentialKind kind = PotentialKind::NonDegenerate;
    std::vector<double> nus;
    double lambda1 = 0.0;

    void validate() const;
};

struct Constants {
    double tr_plus = 0.0, tr_minus = 0.0, A = 1.0, B = 0.0;
};

Constants constants(const PotentialSpec &spec);

enum class Alpha { Zero, HalfPi };

struct ModelParams {
    double nu = 1.0;
    Alpha alpha = Alpha::Zero;
    double lambda1 = 0.0;
    cplx z;  // e^{i alpha} sqrt(nu)
    cplx n1; // sqrt(1 + 4 z^2)

    static ModelParams make(double nu, Alpha alpha, double lambda1 = 0.0);
    // One-dimensional curvature c of V = c q^2 / 2: c < 0 gives alpha = 0, c > 0 gives alpha = pi/2.
    static ModelParams from_curvature(double c);

    cplx phase() const { return alpha == Alpha::Zero ? cplx(1.0) : kI; }     // e^{i alpha}, exact
    double phase2() const { return alpha == Alpha::Zero ? 1.0 : -1.0; }      // e^{2i alpha}, exact
    double sin_alpha() const { return alpha == Alpha::Zero ? 0.0 : 1.0; }
    double cos_alpha() const { return alpha == Alpha::Zero ? 1.0 : 0.0; }
    double r1() const; // sqrt(4 nu - 1), requires nu > 1/4
};

// C(t) = ch(t n1 / 2), S(t) = sh(t n1 / 2) / n1 for a complex z; entire in z^2.
void flow_cs(double t, cplx z, cplx &C, cplx &S);

struct HamiltonBasis {
    Alpha alpha;
    Mat4 E, I, J, K, sigma;
    Eigen::Matrix<cplx, 4, 2> T_plus, T_minus;

    const Eigen::Matrix<cplx, 4, 2> &T(int sign) const { return sign > 0 ? T_plus : T_minus; }
};

HamiltonBasis hamilton_basis(Alpha alpha);

// Hessians of the quadratic symbols used throughout.
Mat4 hess_Op();
Mat4 hess_X(Alpha alpha);
Mat4 hess_Y(Alpha alpha);
Mat4 hess_Oq_phase(Alpha alpha); // O_{e^{i alpha} q}
Mat4 hess_Oq();                  // 1/2 (xi_q^2 + q^2)
Mat4 hess_K(const ModelParams &p);

Mat4 hamilton_map(const Mat4 &hess);
// Hessian of the symbol of the commutator [a^w, b^w].
Mat4 commutator_hess(const Mat4 &a, const Mat4 &b);

struct CanonicalMap {
    Mat4 matrix;
    Mat2 plus, minus; // T_+^* M T_+ and T_-^* M T_-
};

CanonicalMap reduce(const Mat4 &m, const HamiltonBasis &hb);
CanonicalMap kappa(double t, const ModelParams &p);
CanonicalMap kappa0(double delta, const ModelParams &p);
// kappa with an arbitrary complex z; the basis still uses the exact phases of p.alpha
Mat4 kappa_matrix(double t, cplx z, const HamiltonBasis &hb);

struct QuaternionCoords {
    cplx a, b, c, d; // M = a Id + b I + c J + d K
    double residual;
};
QuaternionCoords quaternion_coords(const Mat4 &m, const HamiltonBasis &hb);

double commutator_check(const ModelParams &p);

} // namespace kfpq::symbols
