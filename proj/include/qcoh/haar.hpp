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
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string_view>

#include "qcoh/linalg.hpp"

namespace qcoh {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Reproducible random source: std::mt19937_64 seeded through splitmix64.
///
/// Every derived quantity (uniforms, Gaussians, indices) is computed here
/// from raw 64-bit outputs instead of through <random> distributions, whose
/// algorithms are implementation-defined. The same seed therefore yields the
/// same stream with any standard library.
///
/// Sub-streams: substream(k) is seeded with splitmix64(seed + 0x9E3779B97F4A7C15 * (k + 1))
/// and depends only on the seed, never on how much of this stream was consumed.
class SeededGenerator {
   public:
    using result_type = std::uint64_t;

    static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64";
    static constexpr std::uint64_t kDefaultSeed = 20240917;

    explicit SeededGenerator(std::uint64_t seed = kDefaultSeed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }
    std::string_view algorithm() const { return kAlgorithm; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Complex Gaussian with E|z|^2 = 1.
    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    /// Uniform on {0, ..., n - 1}; unbiased by rejection.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    SeededGenerator substream(std::uint64_t k) const {
        return SeededGenerator(splitmix64(seed_ + 0x9E3779B97F4A7C15ULL * (k + 1)));
    }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// n x n matrix of i.i.d. standard complex Gaussians, filled column by column.
inline Matrix ginibre_matrix(Index rows, Index cols, SeededGenerator &g) {
    Matrix z(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) z(i, j) = g.complex_normal();
    return z;
}

/// Haar-distributed unitary: QR of a Ginibre matrix, with column j of Q
/// multiplied by r_jj / |r_jj| so that the triangular factor has a positive
/// diagonal.
inline Matrix sample_haar_unitary(Index n, SeededGenerator &g) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample_haar_unitary: dimension must be >= 1");
    Eigen::HouseholderQR<Matrix> qr(ginibre_matrix(n, n, g));
    Matrix q = qr.householderQ();
    const auto &packed = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        const Complex r = packed(j, j);
        const double mag = std::abs(r);
        if (mag > 0.0) q.col(j) *= r / mag;
    }
    return q;
}

/// Columns of a Haar unitary applied to the standard basis.
inline OrthonormalBasis random_basis(Index n, SeededGenerator &g) {
    return OrthonormalBasis::from_unitary(sample_haar_unitary(n, g));
}

/// Gaussian unitary ensemble sample (G + G^H) / 2.
inline HermitianObservable random_hermitian(Index n, SeededGenerator &g) {
    const Matrix z = ginibre_matrix(n, n, g);
    return HermitianObservable::from_matrix((z + z.adjoint()) / 2.0);
}

/// i * H for a GUE sample H; exp(tK) is unitary for every real t.
inline Matrix random_anti_hermitian(Index n, SeededGenerator &g) {
    const Matrix z = ginibre_matrix(n, n, g);
    return Complex(0.0, 1.0) * (z + z.adjoint()) / 2.0;
}

/// exp(tK) for anti-Hermitian K, through the eigendecomposition of the
/// Hermitian matrix iK.
inline Matrix unitary_flow(const Matrix &anti_hermitian, double t) {
    const Matrix h = Complex(0.0, 1.0) * anti_hermitian;
    const Eigensystem es = hermitian_eigendecomposition((h + h.adjoint()) / 2.0);
    // K = -iH, so exp(tK) = V diag(exp(-i t lambda)) V^H.
    Vector phases(es.spectrum.size());
    for (Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -t * es.spectrum(k));
    const Matrix &v = es.eigenbasis.unitary();
    return v * phases.asDiagonal() * v.adjoint();
}

/// Normalized Wishart state G^H G / tr(G^H G) with G of shape rank x n.
inline DensityMatrix random_density(Index n, Index rank, SeededGenerator &g) {
    if (rank < 1 || rank > n) throw Error(ErrorCode::InvalidArgument, "random_density: rank must be in [1, n]");
    const Matrix z = ginibre_matrix(rank, n, g);
    Matrix w = z.adjoint() * z;
    w /= w.trace().real();
    return validate_density(std::move(w));
}

inline DensityMatrix random_pure_state(Index n, SeededGenerator &g) {
    const Vector psi = sample_haar_unitary(n, g).col(0);
    return validate_density(psi * psi.adjoint());
}

inline DensityMatrix maximally_mixed(Index n) {
    return validate_density(Matrix::Identity(n, n) / static_cast<double>(n));
}

/// Span of the first k columns of a Haar unitary.
inline Subspace random_subspace(Index n, Index k, SeededGenerator &g) {
    return Subspace::from_frame(sample_haar_unitary(n, g).leftCols(k));
}

/// As above with k uniform on {1, ..., n}.
inline Subspace random_subspace(Index n, SeededGenerator &g) {
    const auto k = static_cast<Index>(g.uniform_index(static_cast<std::uint64_t>(n))) + 1;
    return random_subspace(n, k, g);
}

/// Haar integral of prod_k |u_1k|^(2 a_k) over U(n), n = a.size():
/// (n-1)! prod_k a_k! / (m+n-1)!, evaluated in log space.
inline double monomial_moment(std::span<const int> exponents) {
    const auto n = static_cast<double>(exponents.size());
    if (exponents.empty()) throw Error(ErrorCode::InvalidArgument, "monomial_moment: empty exponent vector");
    double m = 0.0;
    double log_value = std::lgamma(n);
    for (int a : exponents) {
        if (a < 0) throw Error(ErrorCode::InvalidArgument, "monomial_moment: exponents must be non-negative");
        m += a;
        log_value += std::lgamma(static_cast<double>(a) + 1.0);
    }
    log_value -= std::lgamma(m + n);
    return std::exp(log_value);
}

/// E[sum_i rho_ii^2] in a Haar-random basis: (tr(rho^2) + 1) / (n + 1).
inline double exact_expected_diag_square_sum(const DensityMatrix &rho) {
    const auto n = static_cast<double>(rho.dim());
    return (purity(rho) + 1.0) / (n + 1.0);
}

/// E[eta_2^2] in a Haar-random basis: (n tr(rho^2) - 1) / (n + 1).
inline double exact_expected_eta2_sq(const DensityMatrix &rho) {
    const auto n = static_cast<double>(rho.dim());
    return (n * purity(rho) - 1.0) / (n + 1.0);
}

}  // namespace qcoh
