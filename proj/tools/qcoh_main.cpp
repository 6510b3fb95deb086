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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcoh/qcoh.hpp"

namespace {

// Exit codes.
constexpr int kPass = 0;
constexpr int kExperimentFailed = 1;
constexpr int kUsage = 2;
constexpr int kValidation = 3;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

int exit_code_for(qcoh::ErrorCode code) {
    switch (code) {
        case qcoh::ErrorCode::NotHermitian:
        case qcoh::ErrorCode::TraceNotOne:
        case qcoh::ErrorCode::NotPSD:
        case qcoh::ErrorCode::NotOrthonormal:
        case qcoh::ErrorCode::NotSquare:
        case qcoh::ErrorCode::DimensionMismatch:
        case qcoh::ErrorCode::DegenerateSpectrum:
            return kValidation;
        default:
            return kUsage;
    }
}

int report_error(std::string_view code, const std::string &message, int exit_code) {
    std::cerr << code << ": " << message << '\n';
    return exit_code;
}

std::optional<qcoh::MeasureId> parse_measure(const std::string &name, double c) {
    if (name == "eta1") return qcoh::MeasureId::eta1();
    if (name == "eta2") return qcoh::MeasureId::eta2();
    if (name == "etainf") return qcoh::MeasureId::eta_inf();
    if (name == "delta") return qcoh::MeasureId::delta();
    if (name == "srel") return qcoh::MeasureId::srel(c);
    return std::nullopt;
}

struct MeasureArgs {
    std::string state_file;
    std::string basis_file;
    std::vector<std::string> measures = {"eta1", "eta2", "etainf", "delta"};
    double c = 1.0;
    bool json = false;
    bool csv = false;
};

int cmd_measure(const MeasureArgs &args) {
    const qcoh::DensityMatrix rho = qcoh::validate_density(qcoh::read_matrix_file(args.state_file));
    const qcoh::OrthonormalBasis basis = args.basis_file.empty()
                                             ? qcoh::OrthonormalBasis::standard(rho.dim())
                                             : qcoh::OrthonormalBasis::from_unitary(qcoh::read_matrix_file(args.basis_file));
    const qcoh::StateInBasis s = qcoh::rewrite_in_basis(rho, basis);
    std::vector<std::pair<std::string, double>> values;
    for (const std::string &name : args.measures) {
        const auto id = parse_measure(name, args.c);
        if (!id) return report_error("USAGE_ERROR", "unknown measure '" + name + "'", kUsage);
        values.emplace_back(name, qcoh::measure_value(s, *id));
    }
    if (args.json) {
        nlohmann::ordered_json out;
        for (const auto &[name, v] : values) out[name] = v;
        std::cout << out.dump() << '\n';
    } else if (args.csv) {
        std::cout << "measure,value\n";
        for (const auto &[name, v] : values) std::cout << name << ',' << num(v) << '\n';
    } else {
        for (const auto &[name, v] : values) std::cout << name << ' ' << num(v) << '\n';
    }
    return kPass;
}

int cmd_distance(const std::string &file_a, const std::string &file_b) {
    const auto a = qcoh::OrthonormalBasis::from_unitary(qcoh::read_matrix_file(file_a));
    const auto b = qcoh::OrthonormalBasis::from_unitary(qcoh::read_matrix_file(file_b));
    const double d = qcoh::basis_distance(a, b);
    const bool mub = qcoh::is_mutually_unbiased(a, b, 1e-9);
    std::cout << "distance " << num(d) << '\n' << "mutually_unbiased " << (mub ? "true" : "false") << '\n';
    return kPass;
}

struct ExperimentArgs {
    std::string suite;
    std::vector<qcoh::Index> n_list;
    std::size_t trials = 200;
    std::size_t samples = 2000;
    std::uint64_t seed = qcoh::SeededGenerator::kDefaultSeed;
    std::vector<double> c_list = {0.1, 1.0, 10.0, 100.0};
    std::string out_dir = ".";
    unsigned workers = 0;
};

int cmd_experiment(ExperimentArgs args) {
    if (args.n_list.empty()) args.n_list = {2, 4, 8, 16, 32};
    for (qcoh::Index n : args.n_list) {
        if (n < 1) return report_error("USAGE_ERROR", "--n values must be positive", kUsage);
    }
    const unsigned workers = args.workers == 0 ? qcoh::default_workers() : args.workers;
    qcoh::ExperimentReport report;
    if (args.suite == "theorem42") {
        report = qcoh::run_theorem42_suite(args.n_list, args.trials, args.seed);
    } else if (args.suite == "prop31") {
        report = qcoh::run_proposition31_suite(args.n_list, args.trials, args.seed);
    } else if (args.suite == "purity") {
        qcoh::PuritySweepOptions options;
        options.workers = workers;
        report = qcoh::run_purity_sweep(args.n_list, args.samples, args.seed, options);
    } else {
        for (double c : args.c_list) {
            if (!(c > 0.0)) return report_error("USAGE_ERROR", "--c values must be positive", kUsage);
        }
        report = qcoh::run_srel_demo(args.c_list);
    }
    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path path = std::filesystem::path(args.out_dir) / (args.suite + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) return report_error("IO_ERROR", "cannot write " + path.string(), kUsage);
    out << report.to_csv();
    out.close();
    const bool pass = report.passed();
    std::cout << "experiment " << args.suite << " verdict " << (pass ? "pass" : "fail") << " -> " << path.string()
              << '\n';
    return pass ? kPass : kExperimentFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Basis-relative quantum coherence measures and experiments"};
    app.require_subcommand(1);

    MeasureArgs measure;
    auto *measure_cmd = app.add_subcommand("measure", "Compute coherence measures of a state in a basis");
    measure_cmd->add_option("state", measure.state_file, "Density matrix file")->required();
    measure_cmd->add_option("--basis", measure.basis_file, "Basis file (unitary, columns are vectors); default standard");
    measure_cmd->add_option("--measures", measure.measures, "eta1, eta2, etainf, delta, srel")->delimiter(',');
    measure_cmd->add_option("--c", measure.c, "Constant for srel");
    auto *json_flag = measure_cmd->add_flag("--json", measure.json, "JSON output");
    measure_cmd->add_flag("--csv", measure.csv, "CSV output")->excludes(json_flag);

    std::string basis_a, basis_b;
    auto *distance_cmd = app.add_subcommand("distance", "Distance between two orthonormal bases");
    distance_cmd->add_option("basis_a", basis_a, "First basis file")->required();
    distance_cmd->add_option("basis_b", basis_b, "Second basis file")->required();

    ExperimentArgs experiment;
    auto *experiment_cmd = app.add_subcommand("experiment", "Run an experiment suite and write <suite>.csv");
    experiment_cmd->add_option("suite", experiment.suite, "theorem42 | prop31 | purity | srel")
        ->required()
        ->check(CLI::IsMember({"theorem42", "prop31", "purity", "srel"}));
    experiment_cmd->add_option("--n", experiment.n_list, "Dimensions, comma separated")->delimiter(',');
    experiment_cmd->add_option("--trials", experiment.trials, "Random trials per dimension");
    experiment_cmd->add_option("--samples", experiment.samples, "Monte Carlo samples per state")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    experiment_cmd->add_option("--seed", experiment.seed, "Random seed");
    experiment_cmd->add_option("--c", experiment.c_list, "Constants for the srel suite")->delimiter(',');
    experiment_cmd->add_option("--out", experiment.out_dir, "Output directory");
    experiment_cmd->add_option("--workers", experiment.workers, "Worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return report_error("USAGE_ERROR", e.what(), kUsage);
    }

    try {
        if (*measure_cmd) return cmd_measure(measure);
        if (*distance_cmd) return cmd_distance(basis_a, basis_b);
        return cmd_experiment(experiment);
    } catch (const qcoh::Error &e) {
        return report_error(qcoh::error_code_name(e.code()), e.what(), exit_code_for(e.code()));
    } catch (const std::exception &e) {
        return report_error("INTERNAL_ERROR", e.what(), kUsage);
    }
}
