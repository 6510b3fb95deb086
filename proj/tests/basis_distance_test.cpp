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

#include "qcoh/basis_distance.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "qcoh/haar.hpp"

using namespace qcoh;

namespace {

OrthonormalBasis x_basis() {
    const double s = std::numbers::sqrt2 / 2.0;
    Matrix u(2, 2);
    u << s, s, s, -s;
    return OrthonormalBasis::from_unitary(u);
}

/// Literal sqrt(sum_ij o_ij (1 - o_ij)) with overlaps computed entry by entry.
double distance_oracle(const OrthonormalBasis &a, const OrthonormalBasis &b) {
    double d2 = 0.0;
    for (Index i = 0; i < a.dim(); ++i) {
        for (Index j = 0; j < b.dim(); ++j) {
            const double o = std::norm(a.vector(i).dot(b.vector(j)));
            d2 += o * (1.0 - o);
        }
    }
    return std::sqrt(std::max(d2, 0.0));
}

HermitianObservable diagonal_observable(std::vector<double> values) {
    Matrix m = Matrix::Zero(Index(values.size()), Index(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) m(Index(i), Index(i)) = values[i];
    return HermitianObservable::from_matrix(m);
}

HermitianObservable pauli_x() {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return HermitianObservable::from_matrix(x);
}

/// Permutes the vectors of b and multiplies each by a random phase.
OrthonormalBasis relabel(const OrthonormalBasis &b, SeededGenerator &g) {
    const Index n = b.dim();
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (Index i = n - 1; i > 0; --i) {
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[g.uniform_index(static_cast<std::uint64_t>(i + 1))]);
    }
    Matrix u(n, n);
    for (Index i = 0; i < n; ++i) {
        u.col(i) = b.vector(perm[static_cast<std::size_t>(i)]) * std::polar(1.0, 2 * std::numbers::pi * g.uniform());
    }
    return OrthonormalBasis::from_unitary(u);
}

}  // namespace

TEST(overlap_matrix, examples) {
    SeededGenerator g(1);
    const OrthonormalBasis b = random_basis(5, g);
    EXPECT_LT((overlap_matrix(b, b).entries - RealMatrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);

    const OverlapMatrix zx = overlap_matrix(OrthonormalBasis::standard(2), x_basis());
    EXPECT_LT((zx.entries.array() - 0.5).abs().maxCoeff(), 1e-15);

    for (int trial = 0; trial < 100; ++trial) {
        const Index n = 2 + Index(g.uniform_index(20));
        EXPECT_LT(overlap_matrix(random_basis(n, g), random_basis(n, g)).stochasticity_error(), 1e-9);
    }
}

TEST(overlap_matrix, dimension_mismatch) {
    EXPECT_THROW(overlap_matrix(OrthonormalBasis::standard(2), OrthonormalBasis::standard(3)), Error);
}

TEST(basis_distance, relabelling_is_zero) {
    SeededGenerator g(2);
    for (Index n : {2, 3, 7, 12}) {
        const OrthonormalBasis b = random_basis(n, g);
        const OrthonormalBasis r = relabel(b, g);
        EXPECT_NEAR(basis_distance(b, r), 0.0, 1e-7);
        EXPECT_TRUE(is_relabelling(b, r));
        EXPECT_FALSE(is_relabelling(b, random_basis(n, g)));
    }
}

TEST(basis_distance, mutually_unbiased_is_maximal) {
    for (Index n = 1; n <= 12; ++n) {
        EXPECT_NEAR(basis_distance(OrthonormalBasis::standard(n), fourier_basis(n)), std::sqrt(double(n - 1)), 1e-9);
    }
    EXPECT_NEAR(basis_distance(OrthonormalBasis::standard(2), x_basis()), 1.0, 1e-15);
}

TEST(basis_distance, qubit_rotation_matches_direct_formula) {
    for (int k = 0; k < 20; ++k) {
        const double theta = std::numbers::pi * k / 19.0;
        Matrix u(2, 2);
        u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        const OrthonormalBasis rotated = OrthonormalBasis::from_unitary(u);
        const double d = basis_distance(OrthonormalBasis::standard(2), rotated);
        EXPECT_NEAR(d, distance_oracle(OrthonormalBasis::standard(2), rotated), 1e-12) << theta;
        // o = (cos^2, sin^2; sin^2, cos^2) gives d^2 = 4 sin^2 cos^2.
        EXPECT_NEAR(d, std::abs(std::sin(2 * theta)), 1e-12) << theta;
    }
}

TEST(basis_distance, agrees_with_literal_formula_on_random_pairs) {
    SeededGenerator g(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 1 + Index(g.uniform_index(16));
        const OrthonormalBasis a = random_basis(n, g), b = random_basis(n, g);
        // Compared squared: the literal sum cancels down to rounding noise near zero.
        const double d = basis_distance(a, b), oracle = distance_oracle(a, b);
        EXPECT_NEAR(d * d, oracle * oracle, 1e-12) << n;
    }
}

TEST(basis_distance, small_rotations_keep_relative_accuracy) {
    SeededGenerator g(4);
    const OrthonormalBasis b = random_basis(6, g);
    const Matrix k = random_anti_hermitian(6, g);
    const double d1 = basis_distance(b, OrthonormalBasis::from_unitary(unitary_flow(k, 1e-6) * b.unitary()));
    const double d2 = basis_distance(b, OrthonormalBasis::from_unitary(unitary_flow(k, 1e-9) * b.unitary()));
    ASSERT_GT(d2, 0.0);
    EXPECT_NEAR(d1 / d2, 1000.0, 1.0);
}

TEST(basis_distance, properties_on_random_pairs) {
    SeededGenerator g(5);
    for (int trial = 0; trial < 300; ++trial) {
        const Index n = 2 + Index(g.uniform_index(15));
        const OrthonormalBasis a = random_basis(n, g), b = random_basis(n, g);
        const double d = basis_distance(a, b);
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, std::sqrt(double(n - 1)) + 1e-12);
        EXPECT_NEAR(d, basis_distance(b, a), 1e-12);
        EXPECT_NEAR(d, basis_distance(relabel(a, g), relabel(b, g)), 1e-10);
        EXPECT_FALSE(is_mutually_unbiased(a, b, 1e-9));
    }
}

TEST(basis_distance, zero_distance_means_permutation_overlaps) {
    SeededGenerator g(6);
    const OrthonormalBasis b = random_basis(5, g);
    const OrthonormalBasis r = relabel(b, g);
    ASSERT_LT(basis_distance(b, r), 1e-7);
    const RealMatrix o = overlap_matrix(b, r).entries;
    for (Index i = 0; i < 5; ++i) {
        EXPECT_NEAR(o.row(i).maxCoeff(), 1.0, 1e-12);
        EXPECT_NEAR(o.row(i).sum(), 1.0, 1e-12);
        EXPECT_NEAR(o.col(i).maxCoeff(), 1.0, 1e-12);
    }
}

TEST(is_mutually_unbiased, examples) {
    EXPECT_TRUE(is_mutually_unbiased(OrthonormalBasis::standard(2), x_basis(), 1e-9));
    for (Index n = 2; n <= 6; ++n) {
        EXPECT_FALSE(is_mutually_unbiased(OrthonormalBasis::standard(n), OrthonormalBasis::standard(n), 1e-9));
    }
    // |row k of the 4-point DFT|^2 = 1/4 entrywise.
    const OrthonormalBasis f = fourier_basis(4);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) EXPECT_NEAR(std::norm(f.unitary()(i, j)), 0.25, 1e-15);
    EXPECT_TRUE(is_mutually_unbiased(OrthonormalBasis::standard(4), f, 1e-9));
}

TEST(commutator_upper_bound, commuting_pair) {
    const BoundReport r = commutator_upper_bound(diagonal_observable({1, 4, -2}), diagonal_observable({0, 3, 5}));
    EXPECT_NEAR(r.lhs, 0.0, 1e-15);
    EXPECT_TRUE(r.satisfied);
}

TEST(commutator_upper_bound, diag_and_pauli_x) {
    // [diag(0,1), X] = [[0,-1],[1,0]] has norm 1; rhs = (sqrt2/2) * (1 * 2) * d(Z,X) = sqrt2.
    const BoundReport r = commutator_upper_bound(diagonal_observable({0, 1}), pauli_x());
    EXPECT_NEAR(r.lhs, 1.0, 1e-14);
    EXPECT_NEAR(r.rhs, std::numbers::sqrt2, 1e-14);
    EXPECT_TRUE(r.satisfied);
}

TEST(commutator_upper_bound, random_pairs) {
    SeededGenerator g(7);
    for (int trial = 0; trial < 500; ++trial) {
        const Index n = 2 + Index(g.uniform_index(15));
        const BoundReport r = commutator_upper_bound(random_hermitian(n, g), random_hermitian(n, g));
        ASSERT_TRUE(r.satisfied) << "n=" << n << " lhs=" << r.lhs << " rhs=" << r.rhs;
    }
}

TEST(commutator_upper_bound, unchanged_by_shifting_b) {
    SeededGenerator g(8);
    for (int trial = 0; trial < 50; ++trial) {
        const Index n = 2 + Index(g.uniform_index(8));
        const HermitianObservable a = random_hermitian(n, g), b = random_hermitian(n, g);
        const double lambda = 10.0 * g.normal();
        const HermitianObservable shifted =
            HermitianObservable::from_matrix(b.matrix() + lambda * Matrix::Identity(n, n));
        const BoundReport r1 = commutator_upper_bound(a, b), r2 = commutator_upper_bound(a, shifted);
        EXPECT_NEAR(r1.lhs, r2.lhs, 1e-9 * std::max(1.0, r1.lhs));
        EXPECT_NEAR(r1.rhs, r2.rhs, 1e-8 * std::max(1.0, r1.rhs));
        EXPECT_TRUE(r2.satisfied);
    }
}

TEST(commutator_lower_bound, equal_operators) {
    const HermitianObservable a = diagonal_observable({0.3, 1.0, 2.5});
    const BoundReport r = commutator_lower_bound(a, a);
    EXPECT_NEAR(r.lhs, 0.0, 1e-15);
    EXPECT_NEAR(r.rhs, 0.0, 1e-15);
    EXPECT_TRUE(r.satisfied);
}

TEST(commutator_lower_bound, diag_and_pauli_x_is_tight) {
    // d = 1, c = 1 * 2, rhs = (sqrt4 / 2) * |||[A,X]||| = 1.
    const BoundReport r = commutator_lower_bound(diagonal_observable({0, 1}), pauli_x());
    EXPECT_NEAR(r.lhs, 1.0, 1e-14);
    EXPECT_NEAR(r.rhs, 1.0, 1e-14);
    EXPECT_TRUE(r.satisfied);
}

TEST(commutator_lower_bound, random_pairs) {
    SeededGenerator g(9);
    for (int trial = 0; trial < 500; ++trial) {
        const Index n = 2 + Index(g.uniform_index(15));
        const BoundReport r = commutator_lower_bound(random_hermitian(n, g), random_hermitian(n, g));
        ASSERT_TRUE(r.satisfied) << "n=" << n << " lhs=" << r.lhs << " rhs=" << r.rhs;
    }
}

TEST(commutator_lower_bound, errors) {
    try {
        commutator_lower_bound(diagonal_observable({1, 1, 2}), pauli_x());
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
    try {
        commutator_lower_bound(diagonal_observable({1, 1, 2}), diagonal_observable({0, 1, 2}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateSpectrum);
        EXPECT_NE(std::string(e.what()).find("gap"), std::string::npos);
    }
}

TEST(commutator_lower_bound, rotated_identity_is_degenerate) {
    // 0.7 U I U^dag has eigenvalues split only by rounding.
    SeededGenerator g(8);
    const Matrix u = sample_haar_unitary(2, g);
    const auto a = HermitianObservable::from_matrix(u * (0.7 * Matrix::Identity(2, 2)) * u.adjoint());
    EXPECT_THROW(commutator_lower_bound(a, pauli_x()), Error);
}

TEST(jensen_gap_bound, examples) {
    const std::vector<double> w1 = {1, 0, 0}, x1 = {0.5, -1, 3};
    const BoundReport r1 = jensen_gap_bound(w1, x1, 0.0);
    EXPECT_EQ(r1.lhs, 0.0);
    EXPECT_EQ(r1.rhs, 0.0);
    EXPECT_TRUE(r1.satisfied);

    const std::vector<double> w2 = {0.5, 0.5}, x2 = {0, 1};
    EXPECT_NEAR(jensen_gap(w2, x2), 0.25, 1e-15);
    const BoundReport r2 = jensen_gap_bound(w2, x2, 0.25);
    EXPECT_NEAR(r2.lhs, 0.5, 1e-15);
    EXPECT_NEAR(r2.rhs, 0.5, 1e-15);
    EXPECT_TRUE(r2.satisfied);
}

TEST(jensen_gap_bound, random_instances_with_exact_gap) {
    SeededGenerator g(10);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + g.uniform_index(10);
        std::vector<double> w(n), x(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += (w[i] = -std::log(1.0 - g.uniform()));
        for (auto &wi : w) wi /= total;
        for (auto &xi : x) xi = 4.0 * g.normal();
        // Brute-force gap over all pairs.
        double pairwise = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairwise += w[i] * w[j] * (x[i] - x[j]) * (x[i] - x[j]);
        EXPECT_NEAR(jensen_gap(w, x), pairwise, 1e-10);
        const BoundReport r = jensen_gap_bound(w, x, pairwise);
        ASSERT_TRUE(r.satisfied) << r.lhs << " > " << r.rhs;
    }
}

TEST(jensen_gap_bound, errors) {
    const std::vector<double> bad_w = {0.5, 0.6}, x = {0, 1};
    try {
        jensen_gap_bound(bad_w, x, 1.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::WeightsNotNormalized);
    }
    const std::vector<double> w = {0.5, 0.5}, same = {1, 1};
    try {
        jensen_gap_bound(w, same, 1.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::PointsNotDistinct);
    }
}
