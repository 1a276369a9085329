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
#include "galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "bargmann.hpp"
#include "degenerate.hpp"
#include "exactnorms.hpp"
#include "positivity.hpp"

namespace kfpq::galerkin {

namespace {

using Trip = Eigen::Triplet<cplx>;
const double kSqrt2 = std::sqrt(2.0);

SpMat from_triplets(int rows, int cols, const std::vector<Trip> &t) {
    SpMat m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

// one-dimensional ladder matrices on n levels, used by the fractional weights
SpMat lower(int n) {
    std::vector<Trip> t;
    for (int k = 1; k < n; ++k) t.emplace_back(k - 1, k, std::sqrt(double(k)));
    return from_triplets(n, n, t);
}
SpMat raise(int n) { return SpMat(lower(n).adjoint()); }
SpMat ident(int n) {
    SpMat m(n, n);
    m.setIdentity();
    return m;
}
SpMat position(int n) { return (lower(n) + raise(n)) / kSqrt2; }
SpMat momentum(int n) { return SpMat(-kI * (lower(n) - raise(n)) / kSqrt2); } // D = -i d

double sign_dv(Alpha a) { return a == Alpha::Zero ? -1.0 : 1.0; }

bool one_dimensional(Label l) { return l == Label::K1Fiber || l == Label::Pb; }

// Polynomials in the ladder operators. A word w0 w1 ... acts right to left.
enum Ladder : int { AQ = 0, AQS = 1, AP = 2, APS = 3 };
struct Term {
    cplx c;
    std::vector<int> word;
};
using Poly = std::vector<Term>;

Poly operator+(Poly a, const Poly &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}
Poly operator*(cplx s, Poly a) {
    for (Term &t : a) t.c *= s;
    return a;
}
Poly operator*(const Poly &a, const Poly &b) {
    Poly r;
    for (const Term &x : a)
        for (const Term &y : b) {
            Term t{x.c * y.c, x.word};
            t.word.insert(t.word.end(), y.word.begin(), y.word.end());
            r.push_back(std::move(t));
        }
    return r;
}
Poly unit() { return {{1.0, {}}}; }
Poly lad(int l) { return {{1.0, {l}}}; }
// position (a + a^*)/sqrt2 and D = -i (a - a^*)/sqrt2 of variable v (0 = q, 1 = p)
Poly pos(int v) { return (1.0 / kSqrt2) * (lad(2 * v) + lad(2 * v + 1)); }
Poly mom(int v) { return (-kI / kSqrt2) * (lad(2 * v) + (-1.0) * lad(2 * v + 1)); }
Poly der(int v) { return (1.0 / kSqrt2) * (lad(2 * v) + (-1.0) * lad(2 * v + 1)); }
Poly level(int v, double shift) { return lad(2 * v + 1) * lad(2 * v) + shift * unit(); } // a^* a + shift

// apply a word to |nq, np>; returns false on annihilation of the vacuum
bool act(const std::vector<int> &w, State &s, double &c) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        int &n = (*it == AQ || *it == AQS) ? s.first : s.second;
        if (*it == AQ || *it == AP) {
            if (n == 0) return false;
            c *= std::sqrt(double(n));
            --n;
        } else {
            c *= std::sqrt(double(n + 1));
            ++n;
        }
    }
    return true;
}

struct Assembly {
    Poly poly;
    bool diagonal_fn = false; // sqrt(nu (n_q + 1/2)), not a polynomial
};

Assembly poly_of(Label label, const OpParams &pr) {
    const cplx ph = pr.alpha == Alpha::Zero ? cplx(1.0) : kI; // e^{i alpha}
    const double sq = std::sqrt(pr.nu);
    const Poly X = kI * (std::conj(ph) * (mom(0) * pos(1)) + ph * (pos(0) * mom(1)));
    Assembly a;
    switch (label) {
    case Label::Op: a.poly = level(1, 0.5); break;
    case Label::Oq: a.poly = level(0, 0.5); break;
    case Label::X: a.poly = X; break;
    case Label::Y: a.poly = kI * (ph * (pos(0) * pos(1)) + (-std::conj(ph)) * (mom(0) * mom(1))); break;
    case Label::K: a.poly = level(1, 0.5) + pr.z() * X + (-pr.lambda1) * der(1); break;
    case Label::K1Fiber: a.poly = level(1, 0.0) + (kI * pr.xi_q) * pos(1) + (-pr.lambda1) * der(1); break;
    case Label::Pb: a.poly = level(1, 0.0) + (kI * pr.b) * pos(1) + (-0.5 * pr.b * pr.b) * unit(); break;
    case Label::Aq: a.poly = lad(AQ); break;
    case Label::AqStar: a.poly = lad(AQS); break;
    case Label::Dq: a.poly = sq * mom(0); break;
    case Label::DV: a.poly = (sign_dv(pr.alpha) * sq) * pos(0) + pr.lambda1 * unit(); break;
    case Label::SqrtNuOq: a.diagonal_fn = true; break;
    }
    return a;
}

long long key(const State &s) { return (static_cast<long long>(s.first) << 32) | static_cast<unsigned>(s.second); }

// rows == nullptr: rows are the column states and anything outside is dropped (compression);
// otherwise every reached state is appended to *rows.
SpMat assemble(const Assembly &a, const OpParams &pr, const std::vector<State> &cols, std::vector<State> *rows) {
    std::unordered_map<long long, int> index;
    for (int i = 0; i < int(cols.size()); ++i) index.emplace(key(cols[i]), i);
    std::vector<State> extra;
    std::vector<Trip> trips;
    for (int j = 0; j < int(cols.size()); ++j) {
        if (a.diagonal_fn) {
            trips.emplace_back(j, j, std::sqrt(pr.nu * (cols[j].first + 0.5)));
            continue;
        }
        for (const Term &t : a.poly) {
            State s = cols[j];
            double c = 1.0;
            if (!act(t.word, s, c)) continue;
            auto it = index.find(key(s));
            int row;
            if (it != index.end()) {
                row = it->second;
            } else if (rows) {
                row = int(cols.size() + extra.size());
                index.emplace(key(s), row);
                extra.push_back(s);
            } else {
                continue;
            }
            trips.emplace_back(row, j, t.c * c);
        }
    }
    const int nrows = int(cols.size() + extra.size());
    if (rows) {
        *rows = cols;
        rows->insert(rows->end(), extra.begin(), extra.end());
    }
    SpMat m = from_triplets(nrows, int(cols.size()), trips);
    m.prune(cplx(0.0));
    m.makeCompressed();
    return m;
}

void check_dims(Label label, const OpParams &pr, int dim_q, int dim_p) {
    if (dim_p < 2 || (!one_dimensional(label) && dim_q < 2))
        fail(ErrorCode::InvalidParameter, "galerkin::build: dims must be >= 2");
    if (!(pr.nu >= 0.0) || !std::isfinite(pr.nu)) fail(ErrorCode::InvalidParameter, "galerkin::build: nu must be >= 0");
}

std::vector<State> states_for(Label label, Truncation tr, int dim_q, int dim_p) {
    if (one_dimensional(label)) return truncation_states(Truncation::Box, 1, dim_p);
    return truncation_states(tr, dim_q, dim_p);
}

} // namespace

std::vector<State> truncation_states(Truncation tr, int dim_q, int dim_p) {
    std::vector<State> s;
    switch (tr) {
    case Truncation::Box:
        for (int i = 0; i < dim_q; ++i)
            for (int j = 0; j < dim_p; ++j) s.emplace_back(i, j);
        break;
    case Truncation::Chain:
        for (int i = 0; i < dim_p + dim_q; ++i)
            for (int j = 0; j < dim_p + dim_q; ++j)
                if (std::min(i, j) < dim_p && std::abs(i - j) < dim_q) s.emplace_back(i, j);
        break;
    case Truncation::Degree:
        for (int i = 0; i < dim_q + dim_p - 1; ++i)
            for (int j = 0; i + j < dim_q + dim_p - 1; ++j) s.emplace_back(i, j);
        break;
    }
    return s;
}

Truncation invariant_truncation(Alpha alpha) { return alpha == Alpha::Zero ? Truncation::Chain : Truncation::Degree; }

cplx OpParams::z() const { return (alpha == Alpha::Zero ? cplx(1.0) : kI) * std::sqrt(nu); }

Label parse_label(const std::string &name) {
    static const std::pair<const char *, Label> table[] = {
        {"O_p", Label::Op},       {"O_q", Label::Oq},         {"X", Label::X},      {"Y", Label::Y},
        {"K", Label::K},          {"K1", Label::K1Fiber},     {"P_b", Label::Pb},   {"a_q", Label::Aq},
        {"a_q*", Label::AqStar},  {"D_q", Label::Dq},         {"dV", Label::DV},    {"sqrt_nu_Oq", Label::SqrtNuOq},
    };
    for (const auto &[n, l] : table)
        if (name == n) return l;
    fail(ErrorCode::UnknownLabel, "unknown operator label '" + name + "'");
}

std::string label_name(Label l) {
    switch (l) {
    case Label::Op: return "O_p";
    case Label::Oq: return "O_q";
    case Label::X: return "X";
    case Label::Y: return "Y";
    case Label::K: return "K";
    case Label::K1Fiber: return "K1";
    case Label::Pb: return "P_b";
    case Label::Aq: return "a_q";
    case Label::AqStar: return "a_q*";
    case Label::Dq: return "D_q";
    case Label::DV: return "dV";
    case Label::SqrtNuOq: return "sqrt_nu_Oq";
    }
    fail(ErrorCode::UnknownLabel, "unknown operator label");
}

HermiteOperator build(Label label, const OpParams &pr, int dim_q, int dim_p, Truncation tr) {
    check_dims(label, pr, dim_q, dim_p);
    HermiteOperator op;
    op.label = label;
    op.dim_p = dim_p;
    op.dim_q = one_dimensional(label) ? 1 : dim_q;
    op.truncation = one_dimensional(label) ? Truncation::Box : tr;
    op.states = states_for(label, tr, dim_q, dim_p);
    op.matrix = assemble(poly_of(label, pr), pr, op.states, nullptr);
    return op;
}

SpMat build_rectangular(Label label, const OpParams &pr, int dim_q, int dim_p, Truncation tr) {
    check_dims(label, pr, dim_q, dim_p);
    std::vector<State> rows;
    return assemble(poly_of(label, pr), pr, states_for(label, tr, dim_q, dim_p), &rows);
}

CMat expm(const CMat &m) {
    if (!all_finite(m)) fail(ErrorCode::ExpNotConverged, "expm: non-finite input");
    CMat r = m.exp();
    if (!all_finite(r)) fail(ErrorCode::ExpNotConverged, "expm: scaling and squaring overflowed");
    return r;
}

CMat semigroup_matrix(const HermiteOperator &op, double t, double shift) {
    if (!(t >= 0.0)) fail(ErrorCode::InvalidParameter, "semigroup_matrix: t must be >= 0");
    CMat m = -t * (op.dense() + shift * CMat::Identity(op.size(), op.size()));
    return expm(m);
}

std::vector<std::vector<int>> sparsity_blocks(const SpMat &m) {
    const int n = int(m.rows());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it)
            if (it.value() != cplx(0.0)) {
                const int a = find(int(it.row())), b = find(int(it.col()));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<std::vector<int>> blocks;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (slot[r] < 0) {
            slot[r] = int(blocks.size());
            blocks.emplace_back();
        }
        blocks[slot[r]].push_back(i);
    }
    return blocks;
}

BlockSemigroup block_semigroup(const HermiteOperator &op, double t, double shift) {
    if (!(t >= 0.0)) fail(ErrorCode::InvalidParameter, "block_semigroup: t must be >= 0");
    BlockSemigroup e;
    e.size = op.size();
    e.blocks = sparsity_blocks(op.matrix);
    const CMat full = op.size() <= 600 ? op.dense() : CMat();
    for (const auto &b : e.blocks) {
        const int n = int(b.size());
        CMat sub(n, n);
        if (full.size()) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) sub(i, j) = full(b[i], b[j]);
        } else {
            std::vector<int> pos(op.size(), -1);
            for (int i = 0; i < n; ++i) pos[b[i]] = i;
            sub.setZero();
            for (int j = 0; j < n; ++j)
                for (SpMat::InnerIterator it(op.matrix, b[j]); it; ++it)
                    if (it.value() != cplx(0.0)) sub(pos[it.row()], j) = it.value();
        }
        sub = -t * (sub + shift * CMat::Identity(n, n));
        e.exps.push_back(expm(sub));
    }
    return e;
}

CVec BlockSemigroup::apply(const CVec &x) const {
    CVec y = CVec::Zero(size);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const auto &b = blocks[k];
        CVec xb(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) xb(i) = x(b[i]);
        const CVec yb = exps[k] * xb;
        for (std::size_t i = 0; i < b.size(); ++i) y(b[i]) = yb(i);
    }
    return y;
}

CVec BlockSemigroup::apply_adjoint(const CVec &x) const {
    CVec y = CVec::Zero(size);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const auto &b = blocks[k];
        CVec xb(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) xb(i) = x(b[i]);
        const CVec yb = exps[k].adjoint() * xb;
        for (std::size_t i = 0; i < b.size(); ++i) y(b[i]) = yb(i);
    }
    return y;
}

namespace {

// Largest eigenvalue of a Hermitian PSD operator given by its action.
// Power iteration accelerated by restarted Rayleigh-Ritz on a Krylov basis
// (full reorthogonalization); each restart begins from the top Ritz vector.
template <class Apply> double power_iterate(Apply apply, int n) {
    std::mt19937_64 g(kPowerSeed);
    std::normal_distribution<double> d;
    CVec x(n);
    for (int i = 0; i < n; ++i) x(i) = cplx(d(g), d(g));
    x.normalize();
    const int m = std::min(n, kLanczosBasis);
    CMat v(n, m), av(n, m);
    int applied = 0;
    while (applied < kPowerMaxIter) {
        v.col(0) = x;
        int len = 0;
        double scale = 0.0;
        for (int k = 0; k < m; ++k) {
            av.col(k) = apply(CVec(v.col(k)));
            ++applied;
            len = k + 1;
            if (!all_finite(av.col(k))) fail(ErrorCode::PowerIterationStalled, "power iteration: non-finite iterate");
            scale = std::max(scale, av.col(k).norm());
            if (k + 1 == m) break;
            CVec w = av.col(k);
            for (int pass = 0; pass < 2; ++pass) w -= v.leftCols(len) * (v.leftCols(len).adjoint() * w);
            const double nw = w.norm();
            if (nw <= 1e-13 * scale) break;
            v.col(k + 1) = w / nw;
        }
        if (scale == 0.0) return 0.0;
        CMat h = v.leftCols(len).adjoint() * av.leftCols(len);
        h = (0.5 * (h + h.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<CMat> es(h);
        const double theta = es.eigenvalues()(len - 1);
        const CVec s = es.eigenvectors().col(len - 1);
        x = v.leftCols(len) * s;
        const double resid = (av.leftCols(len) * s - theta * x).norm();
        x.normalize();
        if (theta <= 0.0) return 0.0;
        if (resid <= kPowerTol * theta || resid <= 1e-14 * scale) return theta;
    }
    fail(ErrorCode::PowerIterationStalled, "power iteration did not reach tolerance 1e-10");
}

} // namespace

double operator_norm(const CMat &m) {
    if (!all_finite(m)) fail(ErrorCode::NonFinite, "operator_norm: non-finite matrix");
    if (m.size() == 0) return 0.0;
    const double lam = power_iterate([&](const CVec &x) { return CVec(m.adjoint() * (m * x)); }, int(m.cols()));
    return std::sqrt(std::max(lam, 0.0));
}

double weighted_norm(const BlockSemigroup &e, const SpMat &wstar_w) {
    if (wstar_w.size() == 0) {
        double best = 0.0;
        for (const CMat &b : e.exps) best = std::max(best, operator_norm(b));
        return best;
    }
    const double lam = power_iterate([&](const CVec &x) { return e.apply_adjoint(wstar_w * e.apply(x)); }, e.size);
    return std::sqrt(std::max(lam, 0.0));
}

Quantity parse_quantity(const std::string &name) {
    static const std::pair<const char *, Quantity> table[] = {
        {"norm", Quantity::Norm},
        {"Dq", Quantity::Dq},
        {"sqrt_nu_Oq", Quantity::SqrtNuOq},
        {"aq_star_remainder", Quantity::AqStarRemainder},
        {"degenerate_Dq", Quantity::DegenerateDq},
        {"degenerate_weight", Quantity::DegenerateWeight},
    };
    for (const auto &[n, q] : table)
        if (name == n) return q;
    fail(ErrorCode::UnknownLabel, "unknown quantity '" + name + "'");
}

std::string quantity_name(Quantity q) {
    switch (q) {
    case Quantity::Norm: return "norm";
    case Quantity::Dq: return "Dq";
    case Quantity::SqrtNuOq: return "sqrt_nu_Oq";
    case Quantity::AqStarRemainder: return "aq_star_remainder";
    case Quantity::DegenerateDq: return "degenerate_Dq";
    case Quantity::DegenerateWeight: return "degenerate_weight";
    }
    fail(ErrorCode::UnknownLabel, "unknown quantity");
}

bool DecayCurve::all_converged() const {
    return std::all_of(samples.begin(), samples.end(), [](const Sample &s) { return s.converged; });
}

bool DecayCurve::bound_holds(double tol) const {
    for (const Sample &s : samples)
        if (s.converged && std::isfinite(s.bound) && !(s.oracle <= s.bound * (1.0 + tol))) return false;
    return true;
}

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Setup {
    symbols::ModelParams model;
    OpParams op;
    double shift = 0.0;
    Label weight = Label::Op;
    bool has_weight = false;
    double weight_scale = 1.0;
};

double sqrt_A(const CurveParams &c) {
    symbols::PotentialSpec spec;
    spec.kind = c.curvature == 0.0 ? symbols::PotentialKind::Degenerate : symbols::PotentialKind::NonDegenerate;
    if (c.curvature != 0.0) spec.nus = {c.curvature};
    // with curvature the slope is translated away and does not enter A
    spec.lambda1 = c.curvature == 0.0 ? c.lambda1 : 0.0;
    return std::sqrt(symbols::constants(spec).A);
}

Setup setup(Quantity q, const CurveParams &c) {
    if (c.curvature == 0.0) fail(ErrorCode::InvalidParameter, "decay_curve: this quantity needs a nonzero curvature");
    Setup s;
    s.model = symbols::ModelParams::from_curvature(c.curvature);
    // a linear term lambda1 q is removed by a translation in q, which commutes with D_q
    s.op.nu = s.model.nu;
    s.op.alpha = s.model.alpha;
    const double sq = std::sqrt(s.model.nu);
    switch (q) {
    case Quantity::Norm:
        if (s.model.alpha != Alpha::Zero) fail(ErrorCode::InvalidParameter, "decay_curve norm: needs curvature < 0");
        break;
    case Quantity::Dq:
        s.shift = sqrt_A(c);
        s.has_weight = true;
        s.weight = Label::Dq;
        break;
    case Quantity::SqrtNuOq:
        s.shift = sq;
        s.has_weight = true;
        s.weight = Label::SqrtNuOq;
        break;
    case Quantity::AqStarRemainder:
        if (s.model.alpha != Alpha::HalfPi || !(s.model.nu > 1.0))
            fail(ErrorCode::InvalidParameter, "decay_curve aq_star_remainder: needs curvature > 1");
        s.shift = std::cbrt(s.model.nu);
        s.has_weight = true;
        s.weight = Label::AqStar;
        s.weight_scale = s.model.nu;
        break;
    default: fail(ErrorCode::InvalidParameter, "decay_curve: unsupported quantity");
    }
    return s;
}

// closed form and bound for the nondegenerate quantities
void analytic_and_bound(Quantity q, const Setup &s, double sqA, double t, double &analytic, double &bound) {
    const auto &p = s.model;
    const double sq = std::sqrt(p.nu);
    analytic = kNaN;
    bound = kNaN;
    switch (q) {
    case Quantity::Norm:
        analytic = exactnorms::semigroup_norm(t, p.nu).norm;
        bound = 1.0;
        break;
    case Quantity::Dq:
        // |D_q|^2 = nu D_Q^2 <= 2 nu O_Q <= 2 nu a a^*
        if (sqA >= sq)
            bound = std::sqrt(2.0) * std::exp(-t * (sqA - sq)) * positivity::decay_bound_flow(t, p);
        else if (p.alpha == Alpha::HalfPi && p.nu > 1.0 && sqA >= std::cbrt(p.nu))
            bound = std::sqrt(2.0) * std::exp(-t * (sqA - std::cbrt(p.nu))) * bargmann::remainder_bound(t, p);
        break;
    case Quantity::SqrtNuOq: bound = positivity::decay_bound_flow(t, p); break;
    case Quantity::AqStarRemainder: bound = bargmann::remainder_bound(t, p); break;
    default: break;
    }
}

double oracle_2d(const Setup &s, double t, int n) {
    const Truncation tr = invariant_truncation(s.op.alpha);
    const HermiteOperator k = build(Label::K, s.op, n, n, tr);
    const BlockSemigroup e = block_semigroup(k, t, s.shift);
    if (!s.has_weight) return weighted_norm(e, SpMat());
    const SpMat r = build_rectangular(s.weight, s.op, n, n, tr);
    const SpMat ww = SpMat(s.weight_scale * SpMat(r.adjoint() * r));
    return weighted_norm(e, ww);
}

// sup over xi of w(xi) ||e^{-t(K_xi + 1)}|| on the p-Hermite space
double oracle_fiber(Quantity q, const CurveParams &c, double t, int n, bool &edge) {
    auto value = [&](double xi) {
        OpParams op;
        op.nu = 0.0;
        op.lambda1 = c.lambda1;
        op.xi_q = xi;
        const HermiteOperator k = build(Label::K1Fiber, op, 1, n);
        const double nrm = operator_norm(semigroup_matrix(k, t, 1.0));
        const double w = q == Quantity::DegenerateDq ? std::abs(xi) : xi * xi + c.lambda1 * c.lambda1;
        return w * nrm;
    };
    const double xmax = 20.0, h = 0.1;
    const int m = int(std::round(xmax / h));
    int best = 0;
    std::vector<double> vals(m + 1);
    for (int i = 0; i <= m; ++i) {
        vals[i] = value(i * h);
        if (vals[i] > vals[best]) best = i;
    }
    edge = best == m;
    if (best == 0 || best == m) return vals[best];
    struct Ctx {
        decltype(value) *f;
    } ctx{&value};
    gsl_function f;
    f.function = [](double x, void *p) { return -(*static_cast<Ctx *>(p)->f)(x); };
    f.params = &ctx;
    gsl_min_fminimizer *mn = gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent);
    gsl_error_handler_t *old = gsl_set_error_handler_off();
    double res = vals[best];
    if (gsl_min_fminimizer_set_with_values(mn, &f, best * h, -vals[best], (best - 1) * h, -vals[best - 1], (best + 1) * h,
                                           -vals[best + 1]) == GSL_SUCCESS) {
        for (int it = 0; it < 60; ++it) {
            gsl_min_fminimizer_iterate(mn);
            if (gsl_min_test_interval(gsl_min_fminimizer_x_lower(mn), gsl_min_fminimizer_x_upper(mn), 1e-6, 0.0) == GSL_SUCCESS)
                break;
        }
        res = std::max(res, -gsl_min_fminimizer_f_minimum(mn));
    }
    gsl_set_error_handler(old);
    gsl_min_fminimizer_free(mn);
    return res;
}

} // namespace

DecayCurve decay_curve(Quantity q, const CurveParams &c, const std::vector<double> &t_grid, int dims, bool strict, double conv_tol) {
    if (t_grid.empty()) fail(ErrorCode::InvalidParameter, "decay_curve: empty t grid");
    if (dims < 8) fail(ErrorCode::InvalidParameter, "decay_curve: dims must be >= 8");
    if (!(conv_tol > 0.0)) fail(ErrorCode::InvalidParameter, "decay_curve: convergence tolerance must be > 0");
    for (double t : t_grid)
        if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::InvalidParameter, "decay_curve: t must be > 0");
    DecayCurve curve;
    curve.quantity_label = quantity_name(q);
    curve.params = c;
    curve.dims = dims;
    curve.dims_coarse = (3 * dims) / 4;
    const bool degenerate = q == Quantity::DegenerateDq || q == Quantity::DegenerateWeight;
    if (degenerate && c.curvature != 0.0) fail(ErrorCode::InvalidParameter, "decay_curve: degenerate quantities need curvature 0");
    Setup s;
    double sqA = 1.0;
    if (!degenerate) {
        s = setup(q, c);
        sqA = sqrt_A(c);
    } else {
        s.shift = 1.0;
    }
    curve.shift = s.shift;
    for (double t : t_grid) {
        Sample smp;
        smp.t = t;
        if (degenerate) {
            const double u = degenerate::u_of_t(t), l2 = c.lambda1 * c.lambda1;
            if (q == Quantity::DegenerateDq) {
                // sup_xi |xi| e^{u (xi^2 + lambda1^2)} at xi^2 = -1/(2u)
                smp.analytic = std::exp(-t) * std::exp(u * l2) / std::sqrt(-2.0 * std::exp(1.0) * u);
                smp.bound = std::exp(-0.5 * t) * std::sqrt(degenerate::decay_bound_degenerate(t, c.lambda1));
            } else {
                smp.analytic = degenerate::decay_exact_degenerate(t, c.lambda1);
                smp.bound = degenerate::decay_bound_degenerate(t, c.lambda1);
            }
            bool e1 = false, e2 = false;
            smp.oracle = oracle_fiber(q, c, t, dims, e1);
            smp.oracle_coarse = oracle_fiber(q, c, t, curve.dims_coarse, e2);
            smp.rel_discrepancy = std::abs(smp.oracle - smp.oracle_coarse) / std::abs(smp.oracle);
            smp.converged = !e1 && !e2 && smp.rel_discrepancy <= conv_tol;
        } else {
            analytic_and_bound(q, s, sqA, t, smp.analytic, smp.bound);
            smp.oracle = oracle_2d(s, t, dims);
            smp.oracle_coarse = oracle_2d(s, t, curve.dims_coarse);
            smp.rel_discrepancy = std::abs(smp.oracle - smp.oracle_coarse) / std::abs(smp.oracle);
            smp.converged = smp.rel_discrepancy <= conv_tol;
        }
        if (strict && !smp.converged)
            fail(ErrorCode::TruncationNotConverged, "decay_curve: refinement moved t = " + std::to_string(t) + " by " +
                                                        std::to_string(100.0 * smp.rel_discrepancy) + "%");
        curve.samples.push_back(smp);
    }
    return curve;
}

namespace {

// compression to n levels of f(M) for a Hermitian 1D matrix M assembled on 2n levels
CMat fractional_weight(const SpMat &m_pad, int n, double power) {
    Eigen::SelfAdjointEigenSolver<CMat> es{CMat(m_pad)};
    const Eigen::VectorXd f = (1.0 + es.eigenvalues().array().square()).pow(power);
    const CMat full = es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
    return full.topLeftCorner(n, n);
}

} // namespace

SubellipticResult subelliptic_constant(const CurveParams &c, int dims) {
    if (dims < 8) fail(ErrorCode::InvalidParameter, "subelliptic_constant: dims must be >= 8");
    if (c.curvature == 0.0) fail(ErrorCode::InvalidParameter, "subelliptic_constant: needs a nonzero curvature");
    const auto model = symbols::ModelParams::from_curvature(c.curvature);
    OpParams op;
    op.nu = model.nu;
    op.alpha = model.alpha;
    op.lambda1 = c.lambda1;
    const double A = sqrt_A(c) * sqrt_A(c);
    const int n = dims * dims;

    const SpMat rk = build_rectangular(Label::K, op, dims, dims);
    const CMat lhs = CMat(SpMat(rk.adjoint() * rk)) + A * CMat::Identity(n, n);

    const SpMat rx = build_rectangular(Label::X, op, dims, dims);
    CMat rhs = op.nu * CMat(SpMat(rx.adjoint() * rx)); // X_V = z X_alpha, |z|^2 = nu
    const SpMat opm = build(Label::Op, op, dims, dims).matrix;
    rhs += CMat(SpMat(opm * opm));
    const int pad = 2 * dims;
    const double sq = std::sqrt(model.nu);
    const SpMat dv = sign_dv(model.alpha) * sq * position(pad) + c.lambda1 * ident(pad);
    const SpMat dq = sq * momentum(pad);
    const CMat wv = fractional_weight(dv, dims, 2.0 / 3.0), wd = fractional_weight(dq, dims, 2.0 / 3.0);
    rhs += Eigen::kroneckerProduct(wv + wd, CMat::Identity(dims, dims)).eval();

    const CMat rhs_h = 0.5 * (rhs + rhs.adjoint()), lhs_h = 0.5 * (lhs + lhs.adjoint());
    Eigen::LLT<CMat> llt(rhs_h);
    if (llt.info() != Eigen::Success) fail(ErrorCode::IndefinitePencil, "subelliptic_constant: right-hand Gram is not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<CMat> ges(lhs_h, rhs_h, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (ges.info() != Eigen::Success) fail(ErrorCode::IndefinitePencil, "subelliptic_constant: pencil solve failed");
    return {ges.eigenvalues().minCoeff(), A, dims};
}

} // namespace kfpq::galerkin
