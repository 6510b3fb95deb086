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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qcoh/linalg.hpp"

namespace qcoh {

/// Squared overlaps o_ij = |<e_i|f_j>|^2 between two bases. Doubly stochastic.
struct OverlapMatrix {
    RealMatrix entries;

    Index dim() const { return entries.rows(); }

    /// Largest deviation of any row or column sum from 1.
    double stochasticity_error() const {
        const double r = (entries.rowwise().sum().array() - 1.0).abs().maxCoeff();
        const double c = (entries.colwise().sum().array() - 1.0).abs().maxCoeff();
        return std::max(r, c);
    }
};

/// Outcome of checking lhs <= rhs. `satisfied` allows a relative slack of
/// 1e-9 * max(1, rhs).
struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool satisfied = true;

    static constexpr double kRelativeTolerance = 1e-9;

    static BoundReport make(double lhs, double rhs) {
        const double slack = rhs - lhs;
        const double tol = kRelativeTolerance * std::max(1.0, std::abs(rhs));
        return BoundReport{lhs, rhs, slack, slack >= -tol};
    }
};

inline OverlapMatrix overlap_matrix(const OrthonormalBasis &b1, const OrthonormalBasis &b2) {
    detail::require_same_dim(b1.dim(), b2.dim(), "overlap_matrix");
    return OverlapMatrix{(b1.unitary().adjoint() * b2.unitary()).cwiseAbs2()};
}

/// d^2 = sum_ij o_ij (1 - o_ij), with 1 - o_ij replaced by the rest of row i so
/// that every term is a product of non-negative numbers. Keeps relative
/// accuracy for bases that are nearly relabellings of each other.
inline double basis_distance(const OverlapMatrix &o) {
    const Index n = o.dim();
    double d2 = 0.0;
    for (Index i = 0; i < n; ++i) {
        double prefix = 0.0;
        for (Index j = 0; j < n; ++j) {
            const double x = o.entries(i, j);
            d2 += 2.0 * x * prefix;
            prefix += x;
        }
    }
    return std::sqrt(d2);
}

inline double basis_distance(const OrthonormalBasis &b1, const OrthonormalBasis &b2) {
    return basis_distance(overlap_matrix(b1, b2));
}

inline bool is_mutually_unbiased(const OrthonormalBasis &b1, const OrthonormalBasis &b2, double tol) {
    const OverlapMatrix o = overlap_matrix(b1, b2);
    const double target = 1.0 / static_cast<double>(o.dim());
    return (o.entries.array() - target).abs().maxCoeff() <= tol;
}

/// True when every row of the overlap matrix has an entry >= 1 - n * tol_ortho,
/// i.e. b2 is b1 up to permutation and phases.
inline bool is_relabelling(const OrthonormalBasis &b1, const OrthonormalBasis &b2, const Tolerances &tol = {}) {
    const OverlapMatrix o = overlap_matrix(b1, b2);
    const double threshold = 1.0 - static_cast<double>(o.dim()) * tol.ortho;
    for (Index i = 0; i < o.dim(); ++i) {
        if (o.entries.row(i).maxCoeff() < threshold) return false;
    }
    return true;
}

/// Discrete Fourier basis, f_k = (1/sqrt n) sum_j exp(2 pi i jk / n) |j>.
inline OrthonormalBasis fourier_basis(Index n) {
    Matrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < n; ++k) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            f(j, k) = std::polar(scale, phase);
        }
    }
    return OrthonormalBasis::from_unitary(std::move(f));
}

inline Matrix commutator(const Matrix &a, const Matrix &b) { return a * b - b * a; }

/// max_ij |x_i - x_j| for a sorted spectrum.
inline double spectral_spread(const RealVector &sorted) {
    return sorted.size() == 0 ? 0.0 : sorted(sorted.size() - 1) - sorted(0);
}

/// min_{i != j} |x_i - x_j|; +inf when there are fewer than two points.
inline double minimum_gap(std::span<const double> points) {
    std::vector<double> x(points.begin(), points.end());
    std::sort(x.begin(), x.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < x.size(); ++i) gap = std::min(gap, x[i] - x[i - 1]);
    return gap;
}

inline double minimum_gap(const RealVector &v) { return minimum_gap(std::span<const double>(v.data(), v.size())); }

/// Relative threshold below which two eigenvalues count as degenerate.
inline constexpr double kRelativeGapTolerance = 1e-8;

/// |||[A,B]||| <= (sqrt(n)/2) C d(B_A, B_B), with C the product of spectral
/// spreads. Holds for any choice of eigenbases.
inline BoundReport commutator_upper_bound(const HermitianObservable &a, const HermitianObservable &b) {
    detail::require_same_dim(a.dim(), b.dim(), "commutator_upper_bound");
    const double n = static_cast<double>(a.dim());
    const double lhs = operator_norm(commutator(a.matrix(), b.matrix()));
    const double spread = spectral_spread(a.spectrum()) * spectral_spread(b.spectrum());
    const double d = basis_distance(a.eigenbasis(), b.eigenbasis());
    return BoundReport::make(lhs, std::sqrt(n) / 2.0 * spread * d);
}

/// d(B_A, B_B) <= (sqrt(2n)/c) |||[A,B]|||, with c the product of minimum
/// eigenvalue gaps. Requires both spectra to be non-degenerate.
inline BoundReport commutator_lower_bound(const HermitianObservable &a, const HermitianObservable &b) {
    detail::require_same_dim(a.dim(), b.dim(), "commutator_lower_bound");
    if (a.dim() == 1) return BoundReport::make(0.0, 0.0);
    auto gap_of = [](const HermitianObservable &x, const char *name) {
        const double gap = minimum_gap(x.spectrum());
        // Scaled by the norm as well, so that a multiple of the identity counts as degenerate.
        const double scale = std::max(spectral_spread(x.spectrum()), x.spectrum().cwiseAbs().maxCoeff());
        const double tol = kRelativeGapTolerance * scale;
        if (!(gap > tol)) {
            throw Error(ErrorCode::DegenerateSpectrum, std::string(name) + " has a degenerate spectrum: minimum gap " +
                                                           detail::fmt(gap) + " <= " + detail::fmt(tol));
        }
        return gap;
    };
    const double c = gap_of(a, "A") * gap_of(b, "B");
    const double n = static_cast<double>(a.dim());
    const double lhs = basis_distance(a.eigenbasis(), b.eigenbasis());
    const double rhs = std::sqrt(2.0 * n) / c * operator_norm(commutator(a.matrix(), b.matrix()));
    return BoundReport::make(lhs, rhs);
}

/// sum_i l_i x_i^2 - (sum_i l_i x_i)^2
inline double jensen_gap(std::span<const double> weights, std::span<const double> points) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        m1 += weights[i] * points[i];
        m2 += weights[i] * points[i] * points[i];
    }
    return m2 - m1 * m1;
}

/// If sum_i l_i x_i^2 - (sum_i l_i x_i)^2 <= eps for distinct x, then
/// sum_i l_i (1 - l_i) <= 2 eps / min_{i != j} |x_i - x_j|^2.
inline BoundReport jensen_gap_bound(std::span<const double> weights, std::span<const double> points, double epsilon) {
    if (weights.size() != points.size()) {
        throw Error(ErrorCode::DimensionMismatch, "jensen_gap_bound: weights and points differ in length");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw Error(ErrorCode::WeightsNotNormalized, "negative weight " + detail::fmt(w));
        total += w;
    }
    if (!(std::abs(total - 1.0) <= 1e-10)) {
        throw Error(ErrorCode::WeightsNotNormalized, "weights sum to " + detail::fmt(total));
    }
    const double gap = minimum_gap(points);
    if (points.size() > 1) {
        const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
        const double tol = kRelativeGapTolerance * (*hi - *lo);
        if (!(gap > tol)) {
            throw Error(ErrorCode::PointsNotDistinct, "points are not distinct: minimum gap " + detail::fmt(gap));
        }
    }
    double lhs = 0.0;
    for (double w : weights) lhs += w * (1.0 - w);
    const double rhs = points.size() > 1 ? 2.0 * epsilon / (gap * gap) : 0.0;
    return BoundReport::make(lhs, rhs);
}

}  // namespace qcoh
