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

/**
 * @file
 * Brute-force verification of the operator algebra from first principles.
 *
 * Everything in here deliberately ignores the diagonal structure the main
 * library exploits: operators and shift unitaries are materialized as dense
 * matrices (small d only), coefficients are recovered through operator
 * inner products Tr(U(k)^dag M) / d, and every identity and inequality is
 * evaluated on both the dense route and the library route. Ensembles are
 * reproducible: one 64-bit seed fixes every instance bit-exactly.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qdisturb/tradeoff.hpp"

namespace qdisturb::oracle {

/// Dense cross-checks stay at or below this dimension.
inline constexpr Index kDenseMaxDim = 16;

/// Identity of the random machinery, recorded in every report so ensembles
/// can be reproduced elsewhere: the std::mt19937_64 engine (output sequence
/// fixed by the C++ standard), splitmix64 for deriving per-instance seeds,
/// and 53-bit uniform conversion (x >> 11) * 2^-53.
inline constexpr const char* kGeneratorId =
    "mt19937_64; splitmix64 instance seeds; 53-bit uniforms";

/// splitmix64 step: advances the state and returns the next value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seedable generator with platform-independent uniform doubles.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform on [0, 1), 53 significant bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; never returns 0.
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

enum class EnsembleKind { RandomLikelihood, RandomCompleteModel, RealNonnegativeSpectrum };

inline const char* to_string(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::RandomLikelihood: return "random_likelihood";
        case EnsembleKind::RandomCompleteModel: return "random_complete_model";
        case EnsembleKind::RealNonnegativeSpectrum: return "real_nonnegative_spectrum";
    }
    return "unknown";
}

/// One reproducible ensemble: (seed, d, count, kind) fixes every instance.
struct EnsembleSpec {
    Dimension d;
    Index count;
    std::uint64_t seed;
    EnsembleKind kind = EnsembleKind::RandomLikelihood;
    Index outcomes_per_model = 2; // only for RandomCompleteModel
};

struct CheckFailure {
    std::string check;
    Index dimension;
    std::uint64_t instance_seed;
    double observed;
    double expected;
    double tolerance;
};

/// Aggregated result of a verification run. Empty `failures` means every
/// check passed within tolerance.
struct VerificationReport {
    std::string generator = kGeneratorId;
    long checks_run = 0;
    std::vector<CheckFailure> failures;
    double max_bound_slack = -std::numeric_limits<double>::infinity();
    double min_bound_slack = std::numeric_limits<double>::infinity();

    bool passed() const { return failures.empty(); }

    void record_slack(double slack) {
        max_bound_slack = std::max(max_bound_slack, slack);
        min_bound_slack = std::min(min_bound_slack, slack);
    }

    void merge(const VerificationReport& other) {
        checks_run += other.checks_run;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
        max_bound_slack = std::max(max_bound_slack, other.max_bound_slack);
        min_bound_slack = std::min(min_bound_slack, other.min_bound_slack);
    }

    /// Deterministic order for serialization: by instance seed, then name.
    void sort_failures() {
        std::sort(failures.begin(), failures.end(),
                  [](const CheckFailure& a, const CheckFailure& b) {
                      if (a.instance_seed != b.instance_seed) {
                          return a.instance_seed < b.instance_seed;
                      }
                      return a.check < b.check;
                  });
    }
};

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// d independent draws uniform on (0, 1]. Always a valid likelihood.
inline OutcomeLikelihood<double> random_likelihood(Dimension dim, Rng& rng,
                                                   std::string label = "m") {
    RealVector<double> probs(dim.value());
    for (Index a = 0; a < dim.value(); ++a) {
        probs[a] = rng.uniform_pos();
    }
    return OutcomeLikelihood<double>(std::move(probs), std::move(label));
}

/// For each input a draws n positive weights and normalizes them, so
/// sum_m p(m|a) == 1 up to rounding and the model is complete.
inline MeasurementModel<double> random_complete_model(Dimension dim, Index n_outcomes, Rng& rng) {
    if (n_outcomes < 1) {
        throw std::invalid_argument("random_complete_model: need at least one outcome");
    }
    const Index d = dim.value();
    Eigen::MatrixXd table(d, n_outcomes);
    for (Index a = 0; a < d; ++a) {
        double row_sum = 0;
        for (Index m = 0; m < n_outcomes; ++m) {
            table(a, m) = rng.uniform_pos();
            row_sum += table(a, m);
        }
        table.row(a) /= row_sum;
    }
    std::vector<OutcomeLikelihood<double>> outcomes;
    outcomes.reserve(static_cast<std::size_t>(n_outcomes));
    for (Index m = 0; m < n_outcomes; ++m) {
        outcomes.emplace_back(table.col(m), "m" + std::to_string(m));
    }
    return MeasurementModel<double>(std::move(outcomes));
}

/**
 * Constructs a likelihood whose disturbance coefficients are all real and
 * nonnegative, so the information bound is attained with equality.
 *
 * Sampling: symmetric coefficients C_k = C_{d-k} >= 0 are drawn for
 * k = 1..d-1, then C_0 is drawn at or above their sum. Dominance of C_0 is
 * sufficient (not necessary) for every reconstructed amplitude
 * sum_k cos(2 pi k a / d) C_k to stay nonnegative; the whole vector is then
 * rescaled so the largest amplitude becomes a draw from (0, 1].
 */
inline OutcomeLikelihood<double> tightness_witness(Dimension dim, Rng& rng) {
    const Index d = dim.value();
    RealVector<double> coeffs = RealVector<double>::Zero(d);
    for (Index k = 1; k <= d / 2; ++k) {
        const double value = rng.uniform_pos();
        coeffs[k] = value;
        coeffs[mod_index(d - k, d)] = value;
    }
    const double off_sum = coeffs.sum();
    coeffs[0] = off_sum * (1.0 + rng.uniform01()) + rng.uniform_pos();

    // Largest amplitude sits at a = 0 and equals the plain coefficient sum.
    const double peak = coeffs.sum();
    const double target_peak = rng.uniform_pos();
    coeffs *= target_peak / peak;

    const auto roots = unit_roots<double>(d);
    RealVector<double> probs(d);
    for (Index a = 0; a < d; ++a) {
        std::complex<double> acc{};
        for (Index k = 0; k < d; ++k) {
            acc += roots[(k * a) % d] * coeffs[k];
        }
        const double amp = std::clamp(acc.real(), 0.0, 1.0);
        probs[a] = amp * amp;
    }
    return OutcomeLikelihood<double>(std::move(probs), "witness");
}

// ---------------------------------------------------------------------------
// Dense materialization (small d)
// ---------------------------------------------------------------------------

inline Eigen::MatrixXcd dense_operator(const MeasurementOperator<double>& op) {
    return op.eigenvalues().cast<std::complex<double>>().asDiagonal();
}

inline Eigen::MatrixXcd dense_shift_unitary(Index k, Dimension dim) {
    const Index d = dim.value();
    const auto roots = unit_roots<double>(d);
    Eigen::VectorXcd phases(d);
    for (Index a = 0; a < d; ++a) {
        phases[a] = roots[mod_index(k, d) * a % d];
    }
    return phases.asDiagonal();
}

/// Column b holds the computational amplitudes of the Fourier state |b>.
inline Eigen::MatrixXcd fourier_matrix(Dimension dim) {
    const Index d = dim.value();
    Eigen::MatrixXcd f(d, d);
    for (Index b = 0; b < d; ++b) {
        f.col(b) = fourier_state<double>(b, dim).amplitudes();
    }
    return f;
}

// ---------------------------------------------------------------------------
// Individual checks. Each appends failures to the report; `seed` only labels
// the instance in failure records.
// ---------------------------------------------------------------------------

namespace detail {

inline void record(VerificationReport& report, const std::string& check, Index d,
                   std::uint64_t seed, double observed, double expected, double tol) {
    report.checks_run += 1;
    if (!(std::abs(observed - expected) <= tol)) {
        report.failures.push_back({check, d, seed, observed, expected, tol});
    }
}

} // namespace detail

/// Tr(U(k)^dag U(k')) == d * delta_{k,k'} over all pairs, via dense products.
inline void check_unitary_orthogonality(Dimension dim, double tol, std::uint64_t seed,
                                        VerificationReport& report) {
    const Index d = dim.value();
    std::vector<Eigen::MatrixXcd> unitaries;
    unitaries.reserve(static_cast<std::size_t>(d));
    for (Index k = 0; k < d; ++k) {
        unitaries.push_back(dense_shift_unitary(k, dim));
    }
    double worst = 0;
    for (Index k = 0; k < d; ++k) {
        for (Index k2 = 0; k2 < d; ++k2) {
            const std::complex<double> trace = (unitaries[static_cast<std::size_t>(k)].adjoint() *
                                                unitaries[static_cast<std::size_t>(k2)])
                                                   .trace();
            const std::complex<double> expected = k == k2 ? std::complex<double>(static_cast<double>(d))
                                                          : std::complex<double>(0);
            worst = std::max(worst, std::abs(trace - expected));
        }
    }
    detail::record(report, "unitary_orthogonality", d, seed, worst, 0.0, tol);
}

/**
 * Dense expansion identity: M == sum_k C_k U(k) entrywise, with the library
 * coefficients also compared against the independent dense recovery
 * C_k = Tr(U(k)^dag M) / d.
 */
inline void check_expansion_identity(const OutcomeLikelihood<double>& likelihood, double tol,
                                     std::uint64_t seed, VerificationReport& report) {
    const Dimension dim = likelihood.dim();
    const Index d = dim.value();
    const Eigen::MatrixXcd m = dense_operator(make_operator(likelihood));
    const auto spectrum = spectrum_from_likelihood(likelihood);

    double worst_coeff = 0;
    Eigen::MatrixXcd reconstruction = Eigen::MatrixXcd::Zero(d, d);
    for (Index k = 0; k < d; ++k) {
        const Eigen::MatrixXcd u = dense_shift_unitary(k, dim);
        const std::complex<double> dense_coeff = (u.adjoint() * m).trace() / static_cast<double>(d);
        worst_coeff = std::max(worst_coeff, std::abs(dense_coeff - spectrum.coeffs()[k]));
        reconstruction += spectrum.coeffs()[k] * u;
    }
    detail::record(report, "coefficient_agreement", d, seed, worst_coeff, 0.0, tol);

    const double worst_entry = (reconstruction - m).cwiseAbs().maxCoeff();
    detail::record(report, "expansion_identity", d, seed, worst_entry, 0.0, tol);
}

/// |<b+k| M |b>|^2 == |C_k|^2 for every b and k (b-independence included).
inline void check_observable_disturbance(const OutcomeLikelihood<double>& likelihood, double tol,
                                         std::uint64_t seed, VerificationReport& report) {
    const Dimension dim = likelihood.dim();
    const Index d = dim.value();
    const Eigen::MatrixXcd m = dense_operator(make_operator(likelihood));
    const Eigen::MatrixXcd f = fourier_matrix(dim);
    const auto spectrum = spectrum_from_likelihood(likelihood);

    double worst = 0;
    for (Index b = 0; b < d; ++b) {
        const Eigen::VectorXcd output = m * f.col(b);
        for (Index k = 0; k < d; ++k) {
            const std::complex<double> amp = f.col(mod_index(b + k, d)).dot(output);
            worst = std::max(worst, std::abs(std::norm(amp) - joint_output_probability(spectrum, k)));
        }
    }
    detail::record(report, "observable_disturbance", d, seed, worst, 0.0, tol);
}

/// |M |b>|^2 == (1/d) sum_a p(m|a) for every b: the outcome probability of a
/// Fourier input computed as a state norm versus the likelihood average.
inline void check_fourier_outcome_probability(const OutcomeLikelihood<double>& likelihood,
                                              double tol, std::uint64_t seed,
                                              VerificationReport& report) {
    const Dimension dim = likelihood.dim();
    const Index d = dim.value();
    const Eigen::MatrixXcd m = dense_operator(make_operator(likelihood));
    const Eigen::MatrixXcd f = fourier_matrix(dim);
    const double expected = outcome_probability_fourier_input(likelihood);

    double worst = 0;
    for (Index b = 0; b < d; ++b) {
        const double norm2 = (m * f.col(b)).squaredNorm();
        worst = std::max(worst, std::abs(norm2 - expected));
    }
    detail::record(report, "fourier_outcome_probability", d, seed, worst, 0.0, tol);
}

/**
 * Rebuilds the information bound purely from dense quantities — shift
 * probabilities as squared matrix elements at b = 0, normalized by the
 * output norm — then checks (a) max posterior <= dense bound and (b) dense
 * bound agrees with the library evaluation. Returns the dense slack.
 */
inline double check_information_bound(const OutcomeLikelihood<double>& likelihood, double tol,
                                      std::uint64_t seed, VerificationReport& report) {
    const Dimension dim = likelihood.dim();
    const Index d = dim.value();
    const Eigen::MatrixXcd m = dense_operator(make_operator(likelihood));
    const Eigen::MatrixXcd f = fourier_matrix(dim);

    const Eigen::VectorXcd output = m * f.col(0);
    const double outcome_prob = output.squaredNorm();
    double root_sum = 0;
    for (Index k = 0; k < d; ++k) {
        const std::complex<double> amp = f.col(mod_index(k, d)).dot(output);
        root_sum += std::sqrt(std::norm(amp) / outcome_prob);
    }
    const double dense_bound = root_sum * root_sum / static_cast<double>(d);

    const double max_posterior = likelihood.probs().maxCoeff() / likelihood.probs().sum();
    const double slack = dense_bound - max_posterior;
    report.checks_run += 1;
    if (max_posterior > dense_bound + tol) {
        report.failures.push_back(
            {"bound_validity", d, seed, max_posterior, dense_bound, tol});
    }
    report.record_slack(slack);

    const auto library_report = evaluate_tradeoff(likelihood);
    detail::record(report, "bound_two_path_agreement", d, seed, dense_bound,
                   library_report.bound, tol);
    return slack;
}

/// Forward-then-inverse transform must reproduce the likelihood entrywise.
inline void check_roundtrip(const OutcomeLikelihood<double>& likelihood, double tol,
                            std::uint64_t seed, VerificationReport& report) {
    const auto recovered = likelihood_from_spectrum(spectrum_from_likelihood(likelihood));
    const double worst = (recovered.probs() - likelihood.probs()).cwiseAbs().maxCoeff();
    detail::record(report, "spectrum_roundtrip", likelihood.size(), seed, worst, 0.0, tol);
}

/**
 * Runs every dense check against one likelihood: orthogonality, expansion
 * identity, observable disturbance, Fourier outcome probability, information
 * bound (validity plus two-path agreement), and the transform roundtrip.
 * Sub-check failures are recorded in the report, never thrown.
 */
inline VerificationReport brute_force_check(const OutcomeLikelihood<double>& likelihood,
                                            std::uint64_t instance_seed = 0,
                                            double tol = kPhysicsTol) {
    if (likelihood.size() > kDenseMaxDim) {
        throw std::invalid_argument("brute_force_check: dense path is limited to d <= " +
                                    std::to_string(kDenseMaxDim));
    }
    VerificationReport report;
    check_unitary_orthogonality(likelihood.dim(), tol, instance_seed, report);
    check_expansion_identity(likelihood, tol, instance_seed, report);
    check_observable_disturbance(likelihood, tol, instance_seed, report);
    check_fourier_outcome_probability(likelihood, tol, instance_seed, report);
    check_information_bound(likelihood, tol, instance_seed, report);
    check_roundtrip(likelihood, tol, instance_seed, report);
    return report;
}

/**
 * Sweeps a reproducible ensemble through brute_force_check. Instance seeds
 * are drawn from a splitmix64 stream over spec.seed, so any failing instance
 * can be regenerated in isolation from its recorded seed.
 */
inline VerificationReport run_ensemble(const EnsembleSpec& spec, double tol = kPhysicsTol) {
    if (spec.d.value() > kDenseMaxDim) {
        throw std::invalid_argument("run_ensemble: dense path is limited to d <= " +
                                    std::to_string(kDenseMaxDim));
    }
    VerificationReport report;
    std::uint64_t stream = spec.seed;
    for (Index i = 0; i < spec.count; ++i) {
        const std::uint64_t instance_seed = splitmix64(stream);
        Rng rng(instance_seed);
        switch (spec.kind) {
            case EnsembleKind::RandomLikelihood: {
                report.merge(brute_force_check(random_likelihood(spec.d, rng), instance_seed, tol));
                break;
            }
            case EnsembleKind::RandomCompleteModel: {
                const auto model = random_complete_model(spec.d, spec.outcomes_per_model, rng);
                Eigen::MatrixXcd completeness =
                    Eigen::MatrixXcd::Zero(spec.d.value(), spec.d.value());
                for (const auto& outcome : model.outcomes()) {
                    report.merge(brute_force_check(outcome, instance_seed, tol));
                    const Eigen::MatrixXcd m = dense_operator(make_operator(outcome));
                    completeness += m.adjoint() * m;
                }
                const double worst =
                    (completeness - Eigen::MatrixXcd::Identity(spec.d.value(), spec.d.value()))
                        .cwiseAbs()
                        .maxCoeff();
                detail::record(report, "completeness_identity", spec.d.value(), instance_seed,
                               worst, 0.0, tol);
                break;
            }
            case EnsembleKind::RealNonnegativeSpectrum: {
                const auto witness = tightness_witness(spec.d, rng);
                report.merge(brute_force_check(witness, instance_seed, tol));
                const auto bound_report = evaluate_tradeoff(witness);
                detail::record(report, "witness_tightness", spec.d.value(), instance_seed,
                               bound_report.slack, 0.0, tol);
                break;
            }
        }
    }
    report.sort_failures();
    return report;
}

} // namespace qdisturb::oracle
