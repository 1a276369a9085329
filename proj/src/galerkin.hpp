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
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "symbols.hpp"

// Hermite tensor-product Galerkin discretization of the model operators on L^2(R^2),
// used as an independent oracle for the closed-form norms and bounds.
namespace kfpq::galerkin {

using SpMat = Eigen::SparseMatrix<cplx>;
using symbols::Alpha;

enum class Label { Op, Oq, X, Y, K, K1Fiber, Pb, Aq, AqStar, Dq, DV, SqrtNuOq };

Label parse_label(const std::string &name); // UnknownLabel
std::string label_name(Label l);

// Operators are written in the variables where K = O_p + z X_alpha, z = e^{i alpha} sqrt(nu);
// physical weights carry their sqrt(nu) factor (D_q = sqrt(nu) D_Q, d_qV = -+ sqrt(nu) Q + lambda1).
struct OpParams {
    double nu = 1.0;
    Alpha alpha = Alpha::Zero;
    double lambda1 = 0.0;
    double xi_q = 0.0; // fiber frequency for K1Fiber
    double b = 0.0;    // parameter of P_b
    cplx z() const;
};

// Index sets of Hermite states (n_q, n_p).
//  Box:    n_q < dim_q, n_p < dim_p
//  Chain:  min(n_q, n_p) < dim_p and |n_q - n_p| < dim_q; K_{nu,0} keeps n_q - n_p fixed, so no state is cut off its chain
//  Degree: n_q + n_p < dim_q + dim_p - 1; K_{nu,pi/2} keeps n_q + n_p fixed
//  One-dimensional labels (K1, P_b) always use the states (0, n_p), n_p < dim_p.
enum class Truncation { Box, Chain, Degree };
using State = std::pair<int, int>;
std::vector<State> truncation_states(Truncation tr, int dim_q, int dim_p);
// Chain for alpha = 0, Degree for alpha = pi/2
Truncation invariant_truncation(Alpha alpha);

struct HermiteOperator {
    int dim_q = 0, dim_p = 0; // dim_q = 1 for one-dimensional (fiber) operators
    Label label = Label::Op;
    Truncation truncation = Truncation::Box;
    std::vector<State> states; // sorted; for a box the index is n_q * dim_p + n_p
    SpMat matrix;              // Galerkin compression onto span(states)
    CMat dense() const { return CMat(matrix); }
    int size() const { return int(states.size()); }
};

HermiteOperator build(Label label, const OpParams &params, int dim_q, int dim_p, Truncation tr = Truncation::Box);
// The operator applied exactly to the truncated states, with every reached state as a row:
// its Gram matrix is the exact compression of M^* M.
SpMat build_rectangular(Label label, const OpParams &params, int dim_q, int dim_p, Truncation tr = Truncation::Box);

// e^{-tM} by Pade scaling and squaring; ExpNotConverged if the result is not finite.
CMat semigroup_matrix(const HermiteOperator &op, double t, double shift = 0.0);
CMat expm(const CMat &m);

// Connected components of the sparsity graph, with e^{-t(M + shift)} per block.
struct BlockSemigroup {
    std::vector<std::vector<int>> blocks;
    std::vector<CMat> exps;
    int size = 0;
    CVec apply(const CVec &x) const;
    CVec apply_adjoint(const CVec &x) const;
};
std::vector<std::vector<int>> sparsity_blocks(const SpMat &m);
BlockSemigroup block_semigroup(const HermiteOperator &op, double t, double shift = 0.0);

inline constexpr double kPowerTol = 1e-10;
inline constexpr int kPowerMaxIter = 200000; // operator applications
inline constexpr int kLanczosBasis = 40;
inline constexpr std::uint64_t kPowerSeed = 0x6b667071; // fixed start vector seed

// Largest singular value by power iteration on m^* m.
double operator_norm(const CMat &m);
// || W E || with W^* W given as a sparse Hermitian PSD matrix (empty means identity).
double weighted_norm(const BlockSemigroup &e, const SpMat &wstar_w);

// Quantities tabulated by decay_curve.
enum class Quantity {
    Norm,             // ||e^{-tK}||, alpha = 0
    Dq,               // || |D_q| e^{-t(K + sqrt A)} ||
    SqrtNuOq,         // || sqrt(nu O_q) e^{-t(K + sqrt nu)} ||
    AqStarRemainder,  // || sqrt(nu) a_q^* e^{-t(K + nu^{1/3})} ||, alpha = pi/2
    DegenerateDq,     // || |D_q| e^{-t(K_1 + 1)} ||, per fiber
    DegenerateWeight, // || (D_q^2 + lambda1^2) e^{-t(K_1 + 1)} ||, per fiber
};
Quantity parse_quantity(const std::string &name);
std::string quantity_name(Quantity q);

// V = curvature q^2/2 + lambda1 q; curvature 0 is the degenerate model.
struct CurveParams {
    double curvature = 1.0;
    double lambda1 = 0.0;
};

struct Sample {
    double t = 0.0;
    double analytic = 0.0; // NaN when no closed form exists
    double bound = 0.0;
    double oracle = 0.0;
    double oracle_coarse = 0.0;
    double rel_discrepancy = 0.0; // |oracle - oracle_coarse| / oracle
    bool converged = false;       // rel_discrepancy <= 1%
};

struct DecayCurve {
    std::string quantity_label;
    CurveParams params;
    int dims = 0, dims_coarse = 0;
    double shift = 0.0;
    std::vector<Sample> samples;
    bool all_converged() const;
    // oracle <= bound (1 + tol) at every converged sample
    bool bound_holds(double tol = 1e-9) const;
};

inline constexpr double kConvergenceTol = 0.01;
// Coarse level is 3/4 of dims. With strict, TruncationNotConverged on any flagged sample.
DecayCurve decay_curve(Quantity q, const CurveParams &params, const std::vector<double> &t_grid, int dims,
                       bool strict = false, double conv_tol = kConvergenceTol);

// Largest c with ||K u||^2 + A ||u||^2 >= c (||O_p u||^2 + ||X_V u||^2 + ||<d_qV>^{2/3} u||^2 + ||<D_q>^{2/3} u||^2)
// on the dims x dims box; IndefinitePencil if the right side is not positive definite.
struct SubellipticResult {
    double c;
    double A;
    int dims;
};
SubellipticResult subelliptic_constant(const CurveParams &params, int dims);

} // namespace kfpq::galerkin
