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
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "qcoh/coherence.hpp"
#include "qcoh/haar.hpp"

namespace qcoh {

/// Mean, variance accumulator (Welford) with an order-sensitive merge.
class RunningStats {
   public:
    void add(double x) {
        ++count_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(count_);
        m2_ += d * (x - mean_);
    }

    void merge(const RunningStats &other) {
        if (other.count_ == 0) return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        const auto na = static_cast<double>(count_), nb = static_cast<double>(other.count_);
        const double d = other.mean_ - mean_;
        const double n = na + nb;
        mean_ += d * nb / n;
        m2_ += other.m2_ + d * d * na * nb / n;
        count_ += other.count_;
    }

    std::uint64_t count() const { return count_; }
    double mean() const { return mean_; }
    /// Unbiased sample variance.
    double variance() const { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }

   private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;

    static MonteCarloEstimate from(const RunningStats &s) {
        return {s.mean(), std::sqrt(s.variance() / static_cast<double>(s.count())), s.count()};
    }

    /// (mean - exact) / std_error; 0 when both the error and the standard
    /// error vanish, +inf when only the standard error does.
    double z_score(double exact) const {
        // Differences at rounding level count as exact agreement, whatever the
        // standard error (a constant estimator has se ~ 1e-33).
        const double diff = mean - exact;
        if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(exact))) return 0.0;
        if (std_error > 0.0) return diff / std_error;
        return std::numeric_limits<double>::infinity();
    }

    bool agrees_with(double exact, double sigmas = 4.0) const { return std::abs(z_score(exact)) <= sigmas; }
};

/// Samples per sub-stream. Fixed so that results do not depend on the number
/// of workers.
inline constexpr std::size_t kChunkSize = 256;

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs `fn(generator, count, accumulator)` for consecutive chunks of
/// `total` samples. Chunk k draws from g.substream(k); accumulators come back
/// in chunk order for a deterministic reduction.
template <class Acc, class Fn>
std::vector<Acc> run_chunked(const SeededGenerator &g, std::size_t total, unsigned workers, Fn fn) {
    const std::size_t chunks = (total + kChunkSize - 1) / kChunkSize;
    std::vector<Acc> results(chunks);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
            SeededGenerator sub = g.substream(c);
            const std::size_t count = std::min(kChunkSize, total - c * kChunkSize);
            fn(sub, count, results[c]);
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return results;
}

template <std::size_t N>
std::array<RunningStats, N> merge_all(const std::vector<std::array<RunningStats, N>> &parts) {
    std::array<RunningStats, N> total{};
    for (const auto &p : parts)
        for (std::size_t i = 0; i < N; ++i) total[i].merge(p[i]);
    return total;
}

/// Statistics of eta_2(rho, B)^2 over Haar-random bases B.
struct Eta2Statistics {
    MonteCarloEstimate eta2_sq;           // eta_2^2
    MonteCarloEstimate diag_square_sum;   // sum_i rho_ii^2
    MonteCarloEstimate abs_deviation;     // |eta_2^2 - tr(rho^2)|
    double eta2_sq_variance = 0.0;        // unbiased sample variance of eta_2^2
};

inline Eta2Statistics sample_eta2_statistics(const DensityMatrix &rho, std::size_t samples, const SeededGenerator &g,
                                             unsigned workers = default_workers()) {
    if (samples < 2) throw Error(ErrorCode::InvalidArgument, "Monte Carlo estimates need at least 2 samples");
    const double p = purity(rho);
    using Acc = std::array<RunningStats, 3>;
    const auto parts = run_chunked<Acc>(g, samples, workers, [&](SeededGenerator &sub, std::size_t count, Acc &acc) {
        for (std::size_t i = 0; i < count; ++i) {
            const StateInBasis s(rho, random_basis(rho.dim(), sub));
            const double e2 = std::pow(eta2(s), 2);
            acc[0].add(e2);
            acc[1].add(s.rep().diagonal().cwiseAbs2().sum());
            acc[2].add(std::abs(e2 - p));
        }
    });
    const Acc total = merge_all(parts);
    return {MonteCarloEstimate::from(total[0]), MonteCarloEstimate::from(total[1]), MonteCarloEstimate::from(total[2]),
            total[0].variance()};
}

inline MonteCarloEstimate estimate_expected_eta2_sq(const DensityMatrix &rho, std::size_t samples,
                                                    const SeededGenerator &g, unsigned workers = default_workers()) {
    return sample_eta2_statistics(rho, samples, g, workers).eta2_sq;
}

/// Monte Carlo estimate of the Haar integral of prod_k |u_ik|^(2 a_k).
inline MonteCarloEstimate estimate_monomial_moment(std::span<const int> exponents, Index row, std::size_t samples,
                                                   const SeededGenerator &g, unsigned workers = default_workers()) {
    const auto n = static_cast<Index>(exponents.size());
    using Acc = std::array<RunningStats, 1>;
    const auto parts = run_chunked<Acc>(g, samples, workers, [&](SeededGenerator &sub, std::size_t count, Acc &acc) {
        for (std::size_t i = 0; i < count; ++i) {
            const Matrix u = sample_haar_unitary(n, sub);
            double v = 1.0;
            for (Index k = 0; k < n; ++k) v *= std::pow(std::norm(u(row, k)), exponents[k]);
            acc[0].add(v);
        }
    });
    return MonteCarloEstimate::from(merge_all(parts)[0]);
}

struct OverlapMomentCheck {
    MonteCarloEstimate estimate;
    double exact = 0.0;
    double z = 0.0;
    bool agrees = false;  // |z| <= 4
};

/// E|u_ik|^2 |u_il|^2 against (delta_kl + 1) / (n (n + 1)).
inline OverlapMomentCheck overlap_moment_check(Index n, Index i, Index k, Index l, std::size_t samples,
                                               const SeededGenerator &g, unsigned workers = default_workers()) {
    if (i < 0 || k < 0 || l < 0 || i >= n || k >= n || l >= n) {
        throw Error(ErrorCode::InvalidArgument, "overlap_moment_check: index out of range");
    }
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    a[static_cast<std::size_t>(k)] += 1;
    a[static_cast<std::size_t>(l)] += 1;
    OverlapMomentCheck out;
    out.estimate = estimate_monomial_moment(a, i, samples, g, workers);
    const auto nd = static_cast<double>(n);
    out.exact = ((k == l ? 1.0 : 0.0) + 1.0) / (nd * (nd + 1.0));
    out.z = out.estimate.z_score(out.exact);
    out.agrees = std::abs(out.z) <= 4.0;
    return out;
}

}  // namespace qcoh
