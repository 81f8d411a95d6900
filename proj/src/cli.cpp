// Copyright 2026 The qdisturb authors
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

#include "qdisturb/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "qdisturb/channel.hpp"
#include "qdisturb/io.hpp"
#include "qdisturb/oracle.hpp"
#include "qdisturb/tradeoff.hpp"
#include "qdisturb/version.hpp"

#include <CLI11.hpp>

namespace qdisturb::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

/// Fixed default so unscripted runs reproduce; pass --seed for variation.
constexpr std::uint64_t kDefaultSeed = 0x5eed;

std::string read_input(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin),
                           std::istreambuf_iterator<char>());
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open input file '" + path + "'");
    }
    return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    file << content;
}

struct CommonOptions {
    std::string input = "-";
    std::string output;
    std::string format = "json";
};

void add_common_options(CLI::App* cmd, CommonOptions& opts, bool with_input) {
    if (with_input) {
        cmd->add_option("-i,--input", opts.input, "Input file ('-' for stdin)")->required();
    }
    cmd->add_option("-o,--output", opts.output, "Output file (default: stdout)");
    cmd->add_option("-f,--format", opts.format, "Output format: json, csv, or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
}

int cmd_expand(const CommonOptions& opts) {
    const auto doc = io::parse_likelihood_document(read_input(opts.input));
    std::vector<io::SpectrumRow> rows;
    rows.reserve(doc.outcomes.size());
    for (const auto& outcome : doc.outcomes) {
        const auto spectrum = spectrum_from_likelihood(outcome);
        rows.push_back({outcome.label(), spectrum.coeffs(), spectrum.coeffs().cwiseAbs2(),
                        disturbance_distribution(spectrum).probs()});
    }
    write_output(opts.output,
                 io::render_expand(doc.d.value(), rows, io::parse_format(opts.format)));
    return kExitOk;
}

int cmd_bound(const CommonOptions& opts) {
    const auto doc = io::parse_likelihood_document(read_input(opts.input));
    std::vector<BoundReport<double>> reports;
    reports.reserve(doc.outcomes.size());
    for (const auto& outcome : doc.outcomes) {
        reports.push_back(evaluate_tradeoff(outcome));
    }
    write_output(opts.output,
                 io::render_bound(doc.d.value(), reports, io::parse_format(opts.format)));
    return kExitOk;
}

int cmd_simulate(const CommonOptions& opts, std::int64_t shots, std::uint64_t seed) {
    const auto doc = io::parse_likelihood_document(read_input(opts.input));
    const MeasurementModel<double> model(doc.outcomes); // completeness enforced here
    const auto counts = channel::sample_disturbance_counts(model, shots, seed);
    write_output(opts.output,
                 io::render_counts(doc.d.value(), counts, io::parse_format(opts.format),
                                   io::CountsMeta{seed, shots}));
    return kExitOk;
}

int cmd_assess(const CommonOptions& opts, const std::vector<Index>& dims) {
    if (dims.size() > 1) {
        throw std::runtime_error("assess takes at most one value in --dims");
    }
    const std::string text = read_input(opts.input);
    const std::optional<Index> hint =
        dims.empty() ? std::nullopt : std::optional<Index>(dims.front());
    const auto doc = io::parse_counts_document(text, hint);
    if (hint && doc.d.value() != *hint) {
        throw std::runtime_error("counts document dimension " + std::to_string(doc.d.value()) +
                                 " conflicts with --dims " + std::to_string(*hint));
    }
    const auto report = channel::assess_channel(doc.outcomes, doc.d);
    write_output(opts.output, io::render_leak_report(report, io::fnv1a64_digest(text),
                                                     io::parse_format(opts.format)));
    return kExitOk;
}

int cmd_verify(const CommonOptions& opts, const std::vector<Index>& dims, Index count,
               std::uint64_t seed, double tolerance) {
    oracle::VerificationReport merged;
    std::uint64_t stream = seed;
    for (const Index d : dims) {
        const std::uint64_t dim_seed = oracle::splitmix64(stream);
        const oracle::EnsembleSpec spec{Dimension(d), count, dim_seed,
                                        oracle::EnsembleKind::RandomLikelihood};
        merged.merge(oracle::run_ensemble(spec, tolerance));
    }
    merged.sort_failures();
    const io::VerifyMeta meta{dims, count, seed, tolerance,
                              to_string(oracle::EnsembleKind::RandomLikelihood)};
    write_output(opts.output,
                 io::render_verification(merged, meta, io::parse_format(opts.format)));
    return merged.passed() ? kExitOk : kExitVerificationFailed;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Minimally disturbing quantum measurements: shift-unitary expansion,\n"
                 "observable disturbance statistics, and information-leak bounds.",
                 kToolName};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    CommonOptions expand_opts;
    auto* expand = app.add_subcommand(
        "expand", "Expand outcome likelihoods into shift coefficients C_k and the "
                  "disturbance distribution");
    add_common_options(expand, expand_opts, true);

    CommonOptions bound_opts;
    auto* bound = app.add_subcommand(
        "bound", "Evaluate the information bound, posterior, and tightness per outcome");
    add_common_options(bound, bound_opts, true);

    CommonOptions simulate_opts;
    std::int64_t shots = 1000000;
    std::uint64_t simulate_seed = kDefaultSeed;
    auto* simulate = app.add_subcommand(
        "simulate", "Sample (outcome, shift) counts from a complete measurement model");
    add_common_options(simulate, simulate_opts, true);
    simulate->add_option("--shots", shots, "Number of sampled events")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", simulate_seed, "Sampling seed");

    CommonOptions assess_opts;
    std::vector<Index> assess_dims;
    auto* assess = app.add_subcommand(
        "assess", "Compute per-outcome and aggregate leak bounds from observed counts");
    add_common_options(assess, assess_opts, true);
    assess->add_option("--dims", assess_dims,
                       "Dimension override for CSV counts input (single value)")
        ->delimiter(',');

    CommonOptions verify_opts;
    std::vector<Index> verify_dims{2, 3, 4, 5, 6, 7, 8};
    Index verify_count = 1000;
    std::uint64_t verify_seed = kDefaultSeed;
    double verify_tolerance = kPhysicsTol;
    auto* verify = app.add_subcommand(
        "verify", "Run the dense brute-force checks over random ensembles");
    add_common_options(verify, verify_opts, false);
    verify->add_option("--dims", verify_dims, "Dimensions to sweep")->delimiter(',');
    verify->add_option("--count", verify_count, "Instances per dimension")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_seed, "Ensemble seed");
    verify->add_option("--tolerance", verify_tolerance, "Check tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (expand->parsed()) {
            return cmd_expand(expand_opts);
        }
        if (bound->parsed()) {
            return cmd_bound(bound_opts);
        }
        if (simulate->parsed()) {
            return cmd_simulate(simulate_opts, shots, simulate_seed);
        }
        if (assess->parsed()) {
            return cmd_assess(assess_opts, assess_dims);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_opts, verify_dims, verify_count, verify_seed,
                              verify_tolerance);
        }
    } catch (const std::exception& e) {
        std::cerr << kToolName << ": error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> with_program;
    with_program.reserve(args.size() + 1);
    with_program.emplace_back(kToolName);
    with_program.insert(with_program.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(with_program.size());
    for (const auto& arg : with_program) {
        argv.push_back(arg.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace qdisturb::cli
