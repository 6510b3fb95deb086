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
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcoh/basis_distance.hpp"
#include "qcoh/coherence.hpp"
#include "qcoh/haar.hpp"
#include "qcoh/monte_carlo.hpp"

namespace qcoh {

/// Tabular result of an experiment. Every report carries an `asserted` and an
/// `ok` column; the verdict is derived from those alone.
struct ExperimentReport {
    std::string id;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;

    Index column(const std::string &name) const {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end()) throw Error(ErrorCode::InvalidArgument, "report has no column '" + name + "'");
        return static_cast<Index>(it - columns.begin());
    }

    double at(std::size_t row, const std::string &name) const {
        return rows.at(row)[static_cast<std::size_t>(column(name))];
    }

    bool passed() const {
        const auto asserted = static_cast<std::size_t>(column("asserted"));
        const auto ok = static_cast<std::size_t>(column("ok"));
        return std::all_of(rows.begin(), rows.end(), [&](const auto &r) { return r[asserted] == 0.0 || r[ok] != 0.0; });
    }

    /// Header row, one numeric row per record (%.17g), then `#`-prefixed
    /// metadata lines for the experiment id, seed, parameters, notes and
    /// verdict.
    std::string to_csv() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
        out << '\n';
        char buf[40];
        for (const auto &r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g", r[i]);
                out << (i ? "," : "") << buf;
            }
            out << '\n';
        }
        out << "# experiment=" << id << '\n';
        out << "# seed=" << seed << '\n';
        for (const auto &[k, v] : parameters) out << "# param " << k << '=' << v << '\n';
        for (const auto &note : notes) out << "# note " << note << '\n';
        out << "# verdict=" << (passed() ? "pass" : "fail") << '\n';
        return out.str();
    }
};

namespace detail {

inline std::string join(const std::vector<double> &xs) {
    std::string s;
    char buf[40];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", xs[i]);
        s += (i ? ";" : "");
        s += buf;
    }
    return s;
}

inline std::string join(const std::vector<Index> &xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + std::to_string(xs[i]);
    return s;
}

inline double measure_code(const MeasureId &m) {
    switch (m.kind) {
        case MeasureId::Kind::Eta1: return 1;
        case MeasureId::Kind::Eta2: return 2;
        case MeasureId::Kind::EtaInf: return 3;
        case MeasureId::Kind::Delta: return 4;
        case MeasureId::Kind::SRel: return 5;
    }
    return 0;
}

inline constexpr const char *kMeasureCodes = "measure_codes=1:eta1;2:eta2;3:etainf;4:delta;5:srel";

}  // namespace detail

/// Absolute slack below which a TPF bound counts as violated in the suites.
inline constexpr double kAxiom2SlackTolerance = 1e-10;

/// Times at which axiom-1 paths are sampled: 1e-2 * 10^(-j/2), j = 0..16.
inline std::vector<double> axiom1_times() {
    std::vector<double> ts;
    for (int j = 0; j <= 16; ++j) ts.push_back(1e-2 * std::pow(10.0, -0.5 * j));
    return ts;
}

struct Theorem42Options {
    std::vector<MeasureId> measures = MeasureId::coherence_measures();
    std::size_t paths_per_n = 5;
};

/// Axiom 2 on random (rho, B, F) triples and axiom-1 decay along random
/// unitary paths, for every n and measure.
///
/// Each trial draws rho with a rank uniform on {1..n} (the first trial at each
/// n uses I/n), a Haar basis, one Haar subspace of uniform dimension, and the
/// adversarial subspaces of Q_B[rho]. One row per (n, measure, axiom).
inline ExperimentReport run_theorem42_suite(std::vector<Index> n_list, std::size_t trials, std::uint64_t seed,
                                            const Theorem42Options &options = {}) {
    ExperimentReport report;
    report.id = "theorem42";
    report.seed = seed;
    report.columns = {"n",       "measure",     "axiom", "checks", "violations", "min_slack",
                      "final_d", "final_value", "asserted", "ok"};
    report.parameters = {{"n", detail::join(n_list)},
                         {"trials", std::to_string(trials)},
                         {"paths_per_n", std::to_string(options.paths_per_n)}};
    std::string names;
    for (const auto &m : options.measures) names += (names.empty() ? "" : ";") + m.name();
    report.parameters.emplace_back("measures", names);
    report.notes.emplace_back(detail::kMeasureCodes);

    const SeededGenerator master(seed);
    const std::size_t nm = options.measures.size();
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const Index n = n_list[ni];
        SeededGenerator g = master.substream(2 * ni);
        std::vector<std::size_t> checks(nm, 0), violations(nm, 0);
        std::vector<double> min_slack(nm, std::numeric_limits<double>::infinity());
        auto record = [&](std::size_t mi, double lhs, double rhs) {
            ++checks[mi];
            const double slack = rhs - lhs;
            min_slack[mi] = std::min(min_slack[mi], slack);
            if (slack < -kAxiom2SlackTolerance) ++violations[mi];
        };
        auto check_triple = [&](const StateInBasis &s, const std::vector<Subspace> &subspaces) {
            for (std::size_t mi = 0; mi < nm; ++mi) {
                const double value = measure_value(s, options.measures[mi]);
                for (const Subspace &f : subspaces) record(mi, tpf_deviation(s, f), static_cast<double>(f.dim()) * value);
            }
        };
        for (std::size_t t = 0; t < trials; ++t) {
            const DensityMatrix rho =
                t == 0 ? maximally_mixed(n)
                       : random_density(n, static_cast<Index>(g.uniform_index(static_cast<std::uint64_t>(n))) + 1, g);
            const StateInBasis s(rho, random_basis(n, g));
            std::vector<Subspace> subspaces = adversarial_subspaces(s);
            subspaces.push_back(random_subspace(n, g));
            check_triple(s, subspaces);
        }
        bool has_srel = false;
        for (const auto &m : options.measures) has_srel |= m.kind == MeasureId::Kind::SRel;
        if (has_srel && n == 2) {
            for (const auto &m : options.measures) {
                if (m.kind != MeasureId::Kind::SRel) continue;
                const SrelCounterexample ce = srel_counterexample(m.c);
                const StateInBasis s(srel_counterexample_state(ce.epsilon), OrthonormalBasis::standard(2));
                check_triple(s, {srel_counterexample_subspace()});
                char buf[160];
                std::snprintf(buf, sizeof(buf), "srel_counterexample c=%.17g epsilon=%.17g deviation=%.17g bound=%.17g",
                              m.c, ce.epsilon, ce.deviation, ce.bound);
                report.notes.emplace_back(buf);
            }
        }
        for (std::size_t mi = 0; mi < nm; ++mi) {
            report.rows.push_back({static_cast<double>(n), detail::measure_code(options.measures[mi]), 2.0,
                                   static_cast<double>(checks[mi]), static_cast<double>(violations[mi]), min_slack[mi],
                                   std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), 1.0,
                                   violations[mi] == 0 ? 1.0 : 0.0});
        }

        // Axiom 1: B_t = exp(tK) B_rho with t -> 0.
        SeededGenerator gp = master.substream(2 * ni + 1);
        const std::vector<double> ts = axiom1_times();
        std::vector<std::size_t> a1_checks(nm, 0), a1_viol(nm, 0);
        std::vector<double> a1_slack(nm, std::numeric_limits<double>::infinity());
        std::vector<double> final_d(nm, 0.0), final_value(nm, 0.0);
        std::vector<bool> decays(nm, true);
        for (std::size_t p = 0; p < options.paths_per_n; ++p) {
            const DensityMatrix rho =
                random_density(n, static_cast<Index>(gp.uniform_index(static_cast<std::uint64_t>(n))) + 1, gp);
            const Matrix k = random_anti_hermitian(n, gp);
            const auto path = unitary_flow_path(rho.eigenbasis(), k, ts);
            const Axiom1Trace eta2_trace = check_axiom1(rho, MeasureId::eta2(), path);
            for (std::size_t mi = 0; mi < nm; ++mi) {
                const MeasureId &m = options.measures[mi];
                const Axiom1Trace trace = check_axiom1(rho, m, path);
                for (std::size_t j = 0; j < ts.size(); ++j) {
                    // eta_2 <= d and delta = d; eta_1, eta_inf <= n eta_2 <= n d.
                    double rhs = std::numeric_limits<double>::infinity();
                    double lhs = trace.values[j];
                    switch (m.kind) {
                        case MeasureId::Kind::Eta2: rhs = trace.distances[j]; break;
                        case MeasureId::Kind::Delta: lhs = std::abs(trace.values[j] - trace.distances[j]); rhs = 1e-12; break;
                        case MeasureId::Kind::Eta1:
                        case MeasureId::Kind::EtaInf: rhs = static_cast<double>(n) * eta2_trace.values[j]; break;
                        case MeasureId::Kind::SRel: break;
                    }
                    ++a1_checks[mi];
                    const double slack = rhs - lhs;
                    a1_slack[mi] = std::min(a1_slack[mi], slack);
                    if (slack < -(1e-12 + 1e-9 * std::abs(rhs))) ++a1_viol[mi];
                    if (j > 0 && trace.values[j] > trace.values[j - 1] + 1e-14) decays[mi] = false;
                }
                final_d[mi] = std::max(final_d[mi], trace.distances.back());
                final_value[mi] = std::max(final_value[mi], trace.values.back());
            }
        }
        for (std::size_t mi = 0; mi < nm; ++mi) {
            const bool ok = a1_viol[mi] == 0 && decays[mi] && final_d[mi] < 1e-6 && final_value[mi] < 1e-6;
            report.rows.push_back({static_cast<double>(n), detail::measure_code(options.measures[mi]), 1.0,
                                   static_cast<double>(a1_checks[mi]), static_cast<double>(a1_viol[mi]), a1_slack[mi],
                                   final_d[mi], final_value[mi], 1.0, ok ? 1.0 : 0.0});
        }
    }
    return report;
}

/// Hand-built and random observable pairs for the commutator inequalities.
enum class PairFamily { Random = 0, Commuting = 1, MutuallyUnbiased = 2, Degenerate = 3, NearDegenerate = 4, Spin = 5 };

namespace detail {

inline RealVector random_spectrum(Index n, SeededGenerator &g) {
    RealVector a(n);
    for (Index i = 0; i < n; ++i) a(i) = g.normal();
    return a;
}

inline HermitianObservable observable_in_basis(const RealVector &spectrum, const Matrix &unitary) {
    return HermitianObservable::from_matrix(unitary * spectrum.cast<Complex>().asDiagonal() * unitary.adjoint());
}

inline std::pair<HermitianObservable, HermitianObservable> make_pair(PairFamily family, Index n, SeededGenerator &g) {
    switch (family) {
        case PairFamily::Random: return {random_hermitian(n, g), random_hermitian(n, g)};
        case PairFamily::Commuting: {
            const Matrix v = sample_haar_unitary(n, g);
            const RealVector a = random_spectrum(n, g), b = random_spectrum(n, g);
            return {observable_in_basis(a, v), observable_in_basis(b, v)};
        }
        case PairFamily::MutuallyUnbiased: {
            const RealVector a = random_spectrum(n, g), b = random_spectrum(n, g);
            return {observable_in_basis(a, Matrix::Identity(n, n)), observable_in_basis(b, fourier_basis(n).unitary())};
        }
        case PairFamily::Degenerate:
        case PairFamily::NearDegenerate: {
            RealVector a = random_spectrum(n, g);
            if (n > 1) {
                const double spread = a.maxCoeff() - a.minCoeff();
                a(1) = a(0) + (family == PairFamily::Degenerate ? 0.0 : 1e-5 * spread);
            }
            const Matrix v = sample_haar_unitary(n, g);
            return {observable_in_basis(a, v), random_hermitian(n, g)};
        }
        case PairFamily::Spin: {
            Matrix z = Matrix::Zero(2, 2), x = Matrix::Zero(2, 2);
            z << 1, 0, 0, -1;
            x << 0, 1, 1, 0;
            return {HermitianObservable::from_matrix(z), HermitianObservable::from_matrix(x)};
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown pair family");
}

}  // namespace detail

/// Both commutator inequalities on random and hand-built pairs. The lower
/// bound is skipped (and counted) for degenerate spectra.
inline ExperimentReport run_proposition31_suite(std::vector<Index> n_list, std::size_t trials, std::uint64_t seed) {
    ExperimentReport report;
    report.id = "prop31";
    report.seed = seed;
    report.columns = {"n",
                      "family",
                      "pairs",
                      "upper_violations",
                      "upper_min_rel_slack",
                      "lower_checks",
                      "lower_violations",
                      "lower_min_rel_slack",
                      "lower_skipped",
                      "asserted",
                      "ok"};
    report.parameters = {{"n", detail::join(n_list)}, {"trials", std::to_string(trials)}};
    report.notes.emplace_back("family_codes=0:random;1:commuting;2:mutually_unbiased;3:degenerate;4:near_degenerate;5:spin");

    const SeededGenerator master(seed);
    const PairFamily families[] = {PairFamily::Random, PairFamily::Commuting, PairFamily::MutuallyUnbiased,
                                   PairFamily::Degenerate, PairFamily::NearDegenerate, PairFamily::Spin};
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const Index n = n_list[ni];
        for (PairFamily family : families) {
            if (family == PairFamily::Spin && n != 2) continue;
            SeededGenerator g = master.substream(ni * 8 + static_cast<std::size_t>(family));
            const std::size_t pairs = family == PairFamily::Spin ? 1 : trials;
            std::size_t upper_viol = 0, lower_checks = 0, lower_viol = 0, skipped = 0;
            double upper_slack = std::numeric_limits<double>::infinity();
            double lower_slack = std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < pairs; ++t) {
                const auto [a, b] = detail::make_pair(family, n, g);
                const BoundReport up = commutator_upper_bound(a, b);
                upper_slack = std::min(upper_slack, up.slack / std::max(1.0, up.rhs));
                if (!up.satisfied) ++upper_viol;
                try {
                    const BoundReport low = commutator_lower_bound(a, b);
                    ++lower_checks;
                    lower_slack = std::min(lower_slack, low.slack / std::max(1.0, low.rhs));
                    if (!low.satisfied) ++lower_viol;
                } catch (const Error &e) {
                    if (e.code() != ErrorCode::DegenerateSpectrum) throw;
                    ++skipped;
                }
            }
            const bool ok = upper_viol == 0 && lower_viol == 0;
            report.rows.push_back({static_cast<double>(n), static_cast<double>(family), static_cast<double>(pairs),
                                   static_cast<double>(upper_viol), upper_slack, static_cast<double>(lower_checks),
                                   static_cast<double>(lower_viol), lower_checks ? lower_slack : std::nan(""),
                                   static_cast<double>(skipped), 1.0, ok ? 1.0 : 0.0});
        }
    }
    return report;
}

enum class StateFamily { Pure = 0, Mixed = 1, MaximallyMixed = 2 };

struct PuritySweepOptions {
    std::vector<StateFamily> families = {StateFamily::Pure, StateFamily::Mixed, StateFamily::MaximallyMixed};
    Index mixed_rank = 2;
    unsigned workers = default_workers();
};

/// Monte Carlo of eta_2^2 over Haar bases against (n tr(rho^2) - 1)/(n + 1),
/// for one state per (family, n). A row is ok when |z| <= 4 and the mean
/// |eta_2^2 - tr(rho^2)| does not exceed the previous n's value.
inline ExperimentReport run_purity_sweep(std::vector<Index> n_list, std::size_t samples, std::uint64_t seed,
                                         const PuritySweepOptions &options = {}) {
    std::sort(n_list.begin(), n_list.end());
    ExperimentReport report;
    report.id = "purity";
    report.seed = seed;
    report.columns = {"n",          "family",     "rank",          "purity",         "mean_eta2_sq",
                      "se_eta2_sq", "exact_eta2_sq", "z",          "mean_abs_dev",   "se_abs_dev",
                      "exact_abs_dev", "z_abs_dev", "eta2_sq_variance", "samples",    "asserted",
                      "ok"};
    report.parameters = {{"n", detail::join(n_list)},
                         {"samples", std::to_string(samples)},
                         {"mixed_rank", std::to_string(options.mixed_rank)}};
    report.notes.emplace_back("family_codes=0:pure;1:mixed;2:maximally_mixed");

    const SeededGenerator master(seed);
    for (StateFamily family : options.families) {
        double previous = std::numeric_limits<double>::infinity();
        for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
            const Index n = n_list[ni];
            SeededGenerator g = master.substream(static_cast<std::uint64_t>(family) * 1000 + ni);
            Index rank = n;
            DensityMatrix rho = maximally_mixed(n);
            if (family == StateFamily::Pure) {
                rank = 1;
                rho = random_pure_state(n, g);
            } else if (family == StateFamily::Mixed) {
                rank = std::min(options.mixed_rank, n);
                rho = random_density(n, rank, g);
            }
            const Eta2Statistics st = sample_eta2_statistics(rho, samples, g.substream(0), options.workers);
            const double exact = exact_expected_eta2_sq(rho);
            const double exact_dev = exact_expected_diag_square_sum(rho);
            const double z = st.eta2_sq.z_score(exact);
            const double z_dev = st.abs_deviation.z_score(exact_dev);
            const bool ok = std::abs(z) <= 4.0 && st.abs_deviation.mean <= previous;
            previous = st.abs_deviation.mean;
            report.rows.push_back({static_cast<double>(n), static_cast<double>(family), static_cast<double>(rank),
                                   purity(rho), st.eta2_sq.mean, st.eta2_sq.std_error, exact, z,
                                   st.abs_deviation.mean, st.abs_deviation.std_error, exact_dev, z_dev,
                                   st.eta2_sq_variance, static_cast<double>(samples), 1.0, ok ? 1.0 : 0.0});
        }
    }
    return report;
}

/// For each c: the reference epsilon = 0.1 evaluation (informational) and the
/// epsilon found by srel_counterexample (asserted to violate the bound).
inline ExperimentReport run_srel_demo(const std::vector<double> &c_list) {
    ExperimentReport report;
    report.id = "srel";
    report.seed = 0;
    report.columns = {"c", "kind", "epsilon", "deviation", "bound", "margin", "asserted", "ok"};
    report.parameters = {{"c", detail::join(c_list)}, {"reference_epsilon", "0.1"}};
    report.notes.emplace_back("kind_codes=0:reference_epsilon;1:bisection");
    for (double c : c_list) {
        const SrelCounterexample ref = evaluate_srel_counterexample(c, 0.1);
        report.rows.push_back({c, 0.0, ref.epsilon, ref.deviation, ref.bound, ref.margin, 0.0, ref.margin > 0.0 ? 1.0 : 0.0});
        try {
            const SrelCounterexample found = srel_counterexample(c);
            report.rows.push_back({c, 1.0, found.epsilon, found.deviation, found.bound, found.margin, 1.0,
                                   found.margin > 0.0 ? 1.0 : 0.0});
        } catch (const Error &e) {
            if (e.code() != ErrorCode::NotFound) throw;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            report.rows.push_back({c, 1.0, nan, nan, nan, nan, 1.0, 0.0});
            report.notes.push_back(std::string("NOT_FOUND ") + e.what());
        }
    }
    return report;
}

}  // namespace qcoh
