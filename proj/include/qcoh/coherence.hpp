// Copyright 2026 The qcoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qcoh/basis_distance.hpp"
#include "qcoh/haar.hpp"
#include "qcoh/linalg.hpp"

namespace qcoh {

/// A state together with a basis, and the state's matrix written in that
/// basis: rep_ij = <e_i|rho|e_j>.
class StateInBasis {
   public:
    StateInBasis(DensityMatrix rho, OrthonormalBasis basis)
        : rho_(std::move(rho)), basis_(std::move(basis)) {
        detail::require_same_dim(rho_.dim(), basis_.dim(), "rewrite_in_basis");
        const Matrix &v = basis_.unitary();
        rep_ = v.adjoint() * rho_.matrix() * v;
        rep_ = (rep_ + rep_.adjoint()) / 2.0;
    }

    Index dim() const { return rep_.rows(); }
    const DensityMatrix &rho() const { return rho_; }
    const OrthonormalBasis &basis() const { return basis_; }
    const Matrix &rep() const { return rep_; }

   private:
    DensityMatrix rho_;
    OrthonormalBasis basis_;
    Matrix rep_;
};

inline StateInBasis rewrite_in_basis(const DensityMatrix &rho, const OrthonormalBasis &basis) {
    return StateInBasis(rho, basis);
}

/// D_B[rho] as written in B.
inline DensityMatrix diagonal_part(const StateInBasis &s) {
    return validate_density(Matrix(s.rep().diagonal().asDiagonal()));
}

/// Q_B[rho] as written in B: rep with its diagonal zeroed.
inline Matrix off_diagonal_part(const StateInBasis &s) {
    Matrix q = s.rep();
    q.diagonal().setZero();
    return q;
}

/// l1 norm of the off-diagonal entries.
inline double eta1(const StateInBasis &s) { return off_diagonal_part(s).cwiseAbs().sum(); }

/// l2 norm of the off-diagonal entries.
inline double eta2(const StateInBasis &s) { return off_diagonal_part(s).norm(); }

/// n times the largest off-diagonal modulus.
inline double eta_inf(const StateInBasis &s) {
    if (s.dim() < 2) return 0.0;
    return static_cast<double>(s.dim()) * off_diagonal_part(s).cwiseAbs().maxCoeff();
}

/// Distance between the solver's eigenbasis of rho and B.
inline double delta(const StateInBasis &s) { return basis_distance(s.rho().eigenbasis(), s.basis()); }

/// c [S(D_B[rho]) - S(rho)] in nats. Not a measure of coherence in the
/// TPF sense; kept for comparison.
inline double s_rel(const StateInBasis &s, double c) {
    if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "s_rel: constant c must be positive");
    return c * (von_neumann_entropy(diagonal_part(s)) - von_neumann_entropy(s.rho()));
}

struct MeasureId {
    enum class Kind { Eta1, Eta2, EtaInf, Delta, SRel };

    Kind kind = Kind::Eta2;
    double c = 1.0;  // only meaningful for SRel

    static MeasureId eta1() { return {Kind::Eta1}; }
    static MeasureId eta2() { return {Kind::Eta2}; }
    static MeasureId eta_inf() { return {Kind::EtaInf}; }
    static MeasureId delta() { return {Kind::Delta}; }
    static MeasureId srel(double c) {
        if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "SRel constant must be positive");
        return {Kind::SRel, c};
    }

    std::string name() const {
        switch (kind) {
            case Kind::Eta1: return "eta1";
            case Kind::Eta2: return "eta2";
            case Kind::EtaInf: return "etainf";
            case Kind::Delta: return "delta";
            case Kind::SRel: return "srel";
        }
        return "unknown";
    }

    /// The four maps that bound the TPF deviation.
    static std::vector<MeasureId> coherence_measures() { return {eta1(), eta2(), eta_inf(), delta()}; }
};

inline double measure_value(const StateInBasis &s, const MeasureId &m) {
    switch (m.kind) {
        case MeasureId::Kind::Eta1: return eta1(s);
        case MeasureId::Kind::Eta2: return eta2(s);
        case MeasureId::Kind::EtaInf: return eta_inf(s);
        case MeasureId::Kind::Delta: return delta(s);
        case MeasureId::Kind::SRel: return s_rel(s, m.c);
    }
    return 0.0;
}

/// |tr(Q_B[rho] Pi_F)| = |sum_k <pi_k|Q|pi_k>| for an orthonormal frame (pi_k)
/// of F given in the same coordinates as rho.
inline double tpf_deviation(const StateInBasis &s, const Subspace &f) {
    detail::require_same_dim(s.dim(), f.ambient_dim(), "tpf_deviation");
    const Matrix y = s.basis().unitary().adjoint() * f.frame();  // frame in B coordinates
    const Matrix q = off_diagonal_part(s);
    Complex total = 0.0;
    for (Index k = 0; k < y.cols(); ++k) total += y.col(k).dot(q * y.col(k));
    return std::abs(total);
}

/// Q_B[rho] in the coordinates rho is given in.
inline Matrix off_diagonal_part_ambient(const StateInBasis &s) {
    const Matrix &v = s.basis().unitary();
    return v * off_diagonal_part(s) * v.adjoint();
}

/// Subspaces on which |tr(Q Pi_F)| is large: the extreme eigenvectors of Q
/// and its positive and negative eigenspaces.
inline std::vector<Subspace> adversarial_subspaces(const StateInBasis &s) {
    const Matrix q = off_diagonal_part_ambient(s);
    const Eigensystem es = hermitian_eigendecomposition((q + q.adjoint()) / 2.0);
    const Matrix &v = es.eigenbasis.unitary();
    const Index n = s.dim();
    std::vector<Subspace> out;
    out.push_back(Subspace::from_frame(v.col(n - 1)));
    if (n > 1) out.push_back(Subspace::from_frame(v.col(0)));
    const double scale = es.spectrum.cwiseAbs().maxCoeff();
    const double cut = 1e-14 * std::max(scale, 1.0);
    Index neg = 0, pos = 0;
    for (Index i = 0; i < n; ++i) {
        if (es.spectrum(i) < -cut) ++neg;
        if (es.spectrum(i) > cut) ++pos;
    }
    if (neg > 1) out.push_back(Subspace::from_frame(v.leftCols(neg)));
    if (pos > 1) out.push_back(Subspace::from_frame(v.rightCols(pos)));
    return out;
}

struct Axiom2Check {
    Index subspace_dim = 0;
    bool adversarial = false;
    BoundReport report;
};

/// Tests |tr(rho Pi_F) - tr(D_B[rho] Pi_F)| <= dim(F) * measure on the
/// adversarial subspaces followed by `trials` Haar-random ones. A passing run
/// is evidence, not proof: the quantifier ranges over all subspaces.
inline std::vector<Axiom2Check> check_axiom2(const StateInBasis &s, const MeasureId &m, std::size_t trials,
                                             SeededGenerator &g) {
    const double value = measure_value(s, m);
    std::vector<Axiom2Check> out;
    auto check = [&](const Subspace &f, bool adversarial) {
        const double k = static_cast<double>(f.dim());
        out.push_back({f.dim(), adversarial, BoundReport::make(tpf_deviation(s, f), k * value)});
    };
    for (const Subspace &f : adversarial_subspaces(s)) check(f, true);
    for (std::size_t t = 0; t < trials; ++t) check(random_subspace(s.dim(), g), false);
    return out;
}

/// The bases exp(t K) B for each t.
inline std::vector<OrthonormalBasis> unitary_flow_path(const OrthonormalBasis &start, const Matrix &anti_hermitian,
                                                       std::span<const double> ts) {
    std::vector<OrthonormalBasis> path;
    path.reserve(ts.size());
    for (double t : ts) path.push_back(OrthonormalBasis::from_unitary(unitary_flow(anti_hermitian, t) * start.unitary()));
    return path;
}

struct Axiom1Trace {
    std::vector<double> distances;  // d(B_rho, B_t)
    std::vector<double> values;     // measure(rho, B_t)
};

/// Measure values along a sequence of bases approaching rho's eigenbasis.
inline Axiom1Trace check_axiom1(const DensityMatrix &rho, const MeasureId &m, std::span<const OrthonormalBasis> path) {
    Axiom1Trace trace;
    for (const OrthonormalBasis &b : path) {
        const StateInBasis s(rho, b);
        trace.distances.push_back(basis_distance(rho.eigenbasis(), b));
        trace.values.push_back(measure_value(s, m));
    }
    return trace;
}

/// [[1/2, eps/2], [eps/2, 1/2]], the state used to show S_rel violates the
/// TPF bound.
inline DensityMatrix srel_counterexample_state(double epsilon) {
    Matrix m(2, 2);
    m << 0.5, 0.5 * epsilon, 0.5 * epsilon, 0.5;
    return validate_density(std::move(m));
}

/// F = span((|e1> + |e2>) / sqrt 2).
inline Subspace srel_counterexample_subspace() {
    Matrix f(2, 1);
    f << std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0;
    return Subspace::from_frame(std::move(f));
}

struct SrelCounterexample {
    double epsilon = 0.0;
    double deviation = 0.0;  // tpf_deviation on F
    double bound = 0.0;      // dim(F) * c * S_rel
    double margin = 0.0;     // deviation - bound, > 0 for a violation
};

/// Evaluates the counterexample at a given epsilon in the standard basis.
inline SrelCounterexample evaluate_srel_counterexample(double c, double epsilon) {
    const StateInBasis s(srel_counterexample_state(epsilon), OrthonormalBasis::standard(2));
    const Subspace f = srel_counterexample_subspace();
    const double deviation = tpf_deviation(s, f);
    const double bound = static_cast<double>(f.dim()) * s_rel(s, c);
    return {epsilon, deviation, bound, deviation - bound};
}

/// Finds epsilon in (0, 1] at which the counterexample violates the bound by
/// the largest margin. The margin eps/2 - c S(eps) has derivative
/// 1/2 - c atanh(eps), decreasing in eps, so its root is located by 80 steps
/// of bisection. Throws NotFound when even the best margin is below 1e-12.
inline SrelCounterexample srel_counterexample(double c) {
    if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "srel_counterexample: c must be positive");
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 - c * std::atanh(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double eps = lo > 0.0 ? lo : hi;
    // S_rel of the counterexample is ((1+e) log1p(e) + (1-e) log1p(-e)) / 2,
    // which stays accurate where the entropy difference cancels.
    const double predicted = eps / 2.0 - c * 0.5 * ((1.0 + eps) * std::log1p(eps) + (1.0 - eps) * std::log1p(-eps));
    SrelCounterexample best = evaluate_srel_counterexample(c, eps);
    if (!(predicted > 1e-12) || !(best.margin > 1e-12)) {
        throw Error(ErrorCode::NotFound, "no violating epsilon in (0, 1] for c = " + detail::fmt(c) +
                                             " (best margin " + detail::fmt(best.margin) + " at epsilon " +
                                             detail::fmt(eps) + ")");
    }
    return best;
}

}  // namespace qcoh
