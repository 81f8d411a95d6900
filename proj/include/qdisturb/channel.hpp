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
 * Empirical leak assessment for a quantum channel probed in the Fourier
 * basis. Observed shift counts per outcome stand in for the exact
 * disturbance distribution; the same root-sum bound applied to the
 * empirical frequencies upper-bounds how much any minimally disturbing
 * process consistent with the observations could have learned about a
 * computational-basis encoding. The intended use is a quick eavesdropping
 * assessment for protocols that encode in two complementary bases.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qdisturb/oracle.hpp"
#include "qdisturb/tradeoff.hpp"

namespace qdisturb::channel {

/// z for a one-sided 95% upper confidence limit.
inline constexpr double kWilsonZ95 = 1.6448536269514722;

/// Observed occurrences n_k of each Fourier-index shift k = (b' - b) mod d
/// for one outcome, aggregated over probe states b.
struct DisturbanceCounts {
    std::string label;
    std::vector<std::int64_t> shift_counts;

    std::int64_t total() const {
        return std::accumulate(shift_counts.begin(), shift_counts.end(), std::int64_t{0});
    }
};

/// Wilson-score upper confidence limit for a binomial proportion.
/// Never falls below the point estimate count/trials.
inline double wilson_upper(std::int64_t count, std::int64_t trials, double z = kWilsonZ95) {
    if (trials < 1 || count < 0 || count > trials) {
        throw std::invalid_argument("wilson_upper: need 0 <= count <= trials, trials >= 1");
    }
    const double n = static_cast<double>(trials);
    const double p_hat = static_cast<double>(count) / n;
    const double z2 = z * z;
    const double center = p_hat + z2 / (2.0 * n);
    const double radius = z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
    return std::min(1.0, (center + radius) / (1.0 + z2 / n));
}

namespace detail {

inline void validate_counts(const DisturbanceCounts& counts, Dimension d) {
    if (static_cast<Index>(counts.shift_counts.size()) != d.value()) {
        throw std::invalid_argument("counts for outcome '" + counts.label + "' have length " +
                                    std::to_string(counts.shift_counts.size()) + ", expected d = " +
                                    std::to_string(d.value()));
    }
    for (std::size_t k = 0; k < counts.shift_counts.size(); ++k) {
        if (counts.shift_counts[k] < 0) {
            throw std::invalid_argument("negative count for outcome '" + counts.label +
                                        "' at shift " + std::to_string(k));
        }
    }
    if (counts.total() < 1) {
        throw std::invalid_argument("outcome '" + counts.label + "' has no observations");
    }
}

} // namespace detail

/**
 * Plug-in leak bound from observed counts: with empirical shift frequencies
 * q_k = n_k / total,
 *
 *     (1/d) * (sum_k sqrt(q_k))^2,
 *
 * clamped into [1/d, 1]. Zero-count shifts contribute nothing — no
 * pseudo-count smoothing, which would only shrink a security-facing upper
 * bound. Point-mass counts give exactly 1/d, exactly uniform counts give 1.
 */
inline double leak_bound_from_counts(const DisturbanceCounts& counts, Dimension d) {
    detail::validate_counts(counts, d);
    const double total = static_cast<double>(counts.total());
    double root_sum = 0;
    for (const std::int64_t n : counts.shift_counts) {
        root_sum += std::sqrt(static_cast<double>(n) / total);
    }
    const double raw = root_sum * root_sum / static_cast<double>(d.value());
    return std::clamp(raw, 1.0 / static_cast<double>(d.value()), 1.0);
}

/// Per-outcome slice of a LeakReport.
struct OutcomeAssessment {
    std::string label;
    std::int64_t total;
    double frequency; // outcome total / grand total
    Eigen::VectorXd empirical_distribution;
    double leak_bound;
    /// Conservative variant: every empirical frequency is replaced by its
    /// Wilson upper limit before the root sum. An upper envelope — the
    /// adjusted vector is deliberately not renormalized — capped at the
    /// trivial bound 1.
    double wilson_high_bound;
};

/**
 * Channel-level assessment. `aggregate_bound` is the frequency-weighted mean
 * of the per-outcome bounds — a single-number summary of the channel, not a
 * per-outcome statement — with the maximum over outcomes reported alongside.
 */
struct LeakReport {
    Index dimension;
    double wilson_z;
    std::vector<OutcomeAssessment> outcomes;
    double aggregate_bound;
    double max_outcome_bound;
};

inline LeakReport assess_channel(const std::vector<DisturbanceCounts>& counts_set, Dimension d,
                                 double wilson_z = kWilsonZ95) {
    if (counts_set.empty()) {
        throw std::invalid_argument("assess_channel: no outcomes");
    }
    std::int64_t grand_total = 0;
    for (const auto& counts : counts_set) {
        detail::validate_counts(counts, d);
        grand_total += counts.total();
    }

    LeakReport report{d.value(), wilson_z, {}, 0.0, 0.0};
    report.outcomes.reserve(counts_set.size());
    for (const auto& counts : counts_set) {
        const std::int64_t total = counts.total();
        Eigen::VectorXd empirical(d.value());
        double adjusted_root_sum = 0;
        for (Index k = 0; k < d.value(); ++k) {
            const std::int64_t n = counts.shift_counts[static_cast<std::size_t>(k)];
            empirical[k] = static_cast<double>(n) / static_cast<double>(total);
            adjusted_root_sum += std::sqrt(wilson_upper(n, total, wilson_z));
        }
        const double bound = leak_bound_from_counts(counts, d);
        const double high = std::min(
            1.0, adjusted_root_sum * adjusted_root_sum / static_cast<double>(d.value()));

        const double frequency = static_cast<double>(total) / static_cast<double>(grand_total);
        report.aggregate_bound += frequency * bound;
        report.max_outcome_bound = std::max(report.max_outcome_bound, bound);
        report.outcomes.push_back({counts.label, total, frequency, std::move(empirical), bound,
                                   std::max(bound, high)});
    }
    return report;
}

/**
 * Samples (outcome, shift) events from the exact joint distribution of a
 * complete model under Fourier-basis input: p(m, k) = |C_k(m)|^2, so
 * p(m) = (1/d) sum_a p(m|a) and shifts within an outcome follow its
 * disturbance distribution. Deterministic per seed; the counts document it
 * returns feeds straight into assess_channel.
 */
inline std::vector<DisturbanceCounts> sample_disturbance_counts(const MeasurementModel<double>& model,
                                                                std::int64_t shots,
                                                                std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("sample_disturbance_counts: shots must be >= 1");
    }
    const Index d = model.dim().value();
    const Index n_outcomes = model.n_outcomes();

    // Flattened joint weights |C_k(m)|^2, cumulated for inverse-CDF sampling.
    std::vector<double> cumulative(static_cast<std::size_t>(n_outcomes * d));
    double running = 0;
    for (Index m = 0; m < n_outcomes; ++m) {
        const auto spectrum = spectrum_from_likelihood(model.outcomes()[static_cast<std::size_t>(m)]);
        for (Index k = 0; k < d; ++k) {
            running += std::norm(spectrum.coeffs()[k]);
            cumulative[static_cast<std::size_t>(m * d + k)] = running;
        }
    }
    const double total_weight = running; // equals 1 for a complete model, up to rounding

    std::vector<DisturbanceCounts> counts;
    counts.reserve(static_cast<std::size_t>(n_outcomes));
    for (Index m = 0; m < n_outcomes; ++m) {
        counts.push_back({model.outcomes()[static_cast<std::size_t>(m)].label(),
                          std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)});
    }

    oracle::Rng rng(seed);
    for (std::int64_t shot = 0; shot < shots; ++shot) {
        const double u = rng.uniform01() * total_weight;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const Index flat = std::min<Index>(static_cast<Index>(it - cumulative.begin()),
                                           n_outcomes * d - 1);
        counts[static_cast<std::size_t>(flat / d)]
            .shift_counts[static_cast<std::size_t>(flat % d)] += 1;
    }
    return counts;
}

} // namespace qdisturb::channel
