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
 * The information-disturbance algebra of a single measurement outcome.
 *
 * A minimally disturbing operator M with eigenvalues sqrt(p(m|a)) expands
 * over the shift unitaries as M = sum_k C_k U(k), where
 *
 *     C_k = (1/d) sum_a exp(-i 2 pi k a / d) sqrt(p(m|a)).
 *
 * On a Fourier-basis input each term shifts b by k, so |C_k|^2 is directly
 * observable as the joint probability of outcome m and shift k. Normalizing
 * |C_k|^2 gives the disturbance distribution p(b+k|b,m), and
 *
 *     max_a p(a|m)  <=  (1/d) * (sum_k sqrt(p(b+k|b,m)))^2
 *
 * bounds the posterior identification probability achievable from the
 * outcome. The bound is achieved exactly when all C_k are real and
 * nonnegative, so their phases line up at a = 0.
 *
 * All functions are pure; independent likelihoods may be evaluated
 * concurrently without restriction.
 */

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "qdisturb/core.hpp"

namespace qdisturb {

/// Reconstructed amplitudes may stray outside [0, 1] by at most this much
/// before a spectrum is rejected as not describing a minimally disturbing
/// outcome; smaller excursions are treated as roundoff and snapped back.
inline constexpr double kReconstructionSlack = 1e-6;

/**
 * The complex expansion coefficients C_k of one measurement operator over
 * the shift unitaries.
 *
 * Real operator eigenvalues force the Hermitian symmetry
 * C_{(d-k) mod d} == conj(C_k), which is validated here (tolerance
 * kPhysicsTol); an asymmetric coefficient vector cannot come from a
 * minimally disturbing outcome.
 */
template <class Scalar = double>
class DisturbanceSpectrum {
  public:
    DisturbanceSpectrum(ComplexVector<Scalar> coeffs, std::string outcome_label = "m")
        : coeffs_(std::move(coeffs)), label_(std::move(outcome_label)) {
        Dimension dim(coeffs_.size());
        const Index d = coeffs_.size();
        for (Index k = 0; k < d; ++k) {
            const auto mirrored = std::conj(coeffs_[mod_index(d - k, d)]);
            if (std::abs(coeffs_[k] - mirrored) > Scalar(kPhysicsTol)) {
                throw std::invalid_argument(
                    "DisturbanceSpectrum '" + label_ +
                    "': coefficients violate the Hermitian symmetry C_{d-k} = conj(C_k) "
                    "required of real operator eigenvalues (index " +
                    std::to_string(k) + ")");
            }
        }
    }

    const ComplexVector<Scalar>& coeffs() const { return coeffs_; }
    const std::string& label() const { return label_; }
    Index size() const { return coeffs_.size(); }
    Dimension dim() const { return Dimension(coeffs_.size()); }

  private:
    ComplexVector<Scalar> coeffs_;
    std::string label_;
};

/**
 * The observable disturbance pattern of one outcome: the probability
 * p(b+k|b,m) that a Fourier-basis input is shifted by k, for each k.
 * Independent of b. Entries are nonnegative and sum to 1 within kPhysicsTol.
 */
template <class Scalar = double>
class DisturbanceDistribution {
  public:
    DisturbanceDistribution(RealVector<Scalar> shift_probs, std::string outcome_label = "m")
        : probs_(std::move(shift_probs)), label_(std::move(outcome_label)) {
        Dimension dim(probs_.size());
        Scalar sum = 0;
        for (Index k = 0; k < probs_.size(); ++k) {
            Scalar& p = probs_[k];
            if (p < Scalar(0)) {
                if (p < -Scalar(kPhysicsTol)) {
                    throw std::invalid_argument("DisturbanceDistribution '" + label_ +
                                                "': negative probability at shift " +
                                                std::to_string(k));
                }
                p = Scalar(0);
            }
            sum += p;
        }
        if (std::abs(sum - Scalar(1)) > Scalar(kPhysicsTol)) {
            throw std::invalid_argument(
                "DisturbanceDistribution '" + label_ + "': probabilities sum to " +
                std::to_string(static_cast<double>(sum)) + ", expected 1");
        }
    }

    const RealVector<Scalar>& probs() const { return probs_; }
    const std::string& label() const { return label_; }
    Index size() const { return probs_.size(); }
    Dimension dim() const { return Dimension(probs_.size()); }

  private:
    RealVector<Scalar> probs_;
    std::string label_;
};

/// Bayesian posterior p(a|m) under a uniform prior. argmax_index is the
/// smallest a attaining the maximum.
template <class Scalar = double>
struct Posterior {
    RealVector<Scalar> probs;
    Index argmax_index;

    Scalar max() const { return probs[argmax_index]; }
};

/**
 * Result of evaluating the information bound for one outcome.
 *
 * slack = bound - max_posterior is never below -kPhysicsTol; `tight` marks
 * instances where the bound is attained (slack < kPhysicsTol). `argmax_tie`
 * reports a runner-up posterior within kPhysicsTol of the maximum.
 */
template <class Scalar = double>
struct BoundReport {
    std::string outcome_label;
    Scalar bound;
    Scalar max_posterior;
    Scalar slack;
    bool tight;
    Index argmax_index;
    bool argmax_tie;
};

/**
 * Expands an outcome likelihood into its disturbance spectrum,
 *
 *     C_k = (1/d) sum_a exp(-i 2 pi k a / d) sqrt(p(m|a)).
 *
 * Direct O(d^2) summation with exact index arithmetic. The output satisfies
 * the Hermitian symmetry by construction and Parseval's relation
 * sum_k |C_k|^2 == (1/d) sum_a p(m|a).
 */
template <class Scalar>
DisturbanceSpectrum<Scalar> spectrum_from_likelihood(const OutcomeLikelihood<Scalar>& likelihood) {
    const Index d = likelihood.size();
    const RealVector<Scalar> roots_of_probs = likelihood.probs().cwiseSqrt();
    const auto roots = unit_roots<Scalar>(d);
    ComplexVector<Scalar> coeffs(d);
    const Scalar inv_d = Scalar(1) / static_cast<Scalar>(d);
    for (Index k = 0; k < d; ++k) {
        std::complex<Scalar> acc{};
        for (Index a = 0; a < d; ++a) {
            acc += std::conj(roots[(k * a) % d]) * roots_of_probs[a];
        }
        coeffs[k] = inv_d * acc;
    }
    return DisturbanceSpectrum<Scalar>(std::move(coeffs), likelihood.label());
}

/**
 * Inverts a disturbance spectrum back to the outcome likelihood:
 *
 *     sqrt(p(m|a)) = sum_k exp(+i 2 pi k a / d) C_k.
 *
 * No 1/d prefactor appears here: the forward transform already carries it,
 * and the pair must compose to the identity.
 *
 * Reconstructed amplitudes must be real within kPhysicsTol and inside
 * [0, 1] up to kReconstructionSlack; beyond that the spectrum does not
 * describe a minimally disturbing outcome and std::domain_error is thrown.
 * Negative roundoff inside the slack is snapped to 0.
 */
template <class Scalar>
OutcomeLikelihood<Scalar> likelihood_from_spectrum(const DisturbanceSpectrum<Scalar>& spectrum) {
    const Index d = spectrum.size();
    const auto roots = unit_roots<Scalar>(d);
    const auto& coeffs = spectrum.coeffs();
    RealVector<Scalar> probs(d);
    for (Index a = 0; a < d; ++a) {
        std::complex<Scalar> acc{};
        for (Index k = 0; k < d; ++k) {
            acc += roots[(k * a) % d] * coeffs[k];
        }
        if (std::abs(acc.imag()) > Scalar(kPhysicsTol)) {
            throw std::domain_error(
                "likelihood_from_spectrum '" + spectrum.label() +
                "': spectrum does not describe a minimally disturbing outcome "
                "(non-real amplitude at a = " + std::to_string(a) + ")");
        }
        Scalar amp = acc.real();
        if (amp < -Scalar(kReconstructionSlack) || amp > Scalar(1) + Scalar(kReconstructionSlack)) {
            throw std::domain_error(
                "likelihood_from_spectrum '" + spectrum.label() +
                "': spectrum does not describe a minimally disturbing outcome "
                "(amplitude " + std::to_string(static_cast<double>(amp)) + " at a = " +
                std::to_string(a) + ")");
        }
        amp = std::clamp(amp, Scalar(0), Scalar(1));
        probs[a] = amp * amp;
    }
    return OutcomeLikelihood<Scalar>(std::move(probs), spectrum.label());
}

/// p(m, b+k | b) = |C_k|^2, the probability of outcome m together with a
/// shift of the Fourier index by k. Carries no b dependence.
template <class Scalar>
Scalar joint_output_probability(const DisturbanceSpectrum<Scalar>& spectrum, Index k) {
    if (k < 0 || k >= spectrum.size()) {
        throw std::out_of_range("joint_output_probability: shift index out of range");
    }
    return std::norm(spectrum.coeffs()[k]);
}

/// p(m|b) = (1/d) sum_a p(m|a): the probability of outcome m for any
/// Fourier-basis input. Equals sum_k |C_k|^2 by Parseval's relation.
template <class Scalar>
Scalar outcome_probability_fourier_input(const OutcomeLikelihood<Scalar>& likelihood) {
    return likelihood.probs().mean();
}

/// Bayesian update from a uniform prior: p(a|m) = p(m|a) / sum_a' p(m|a').
/// Ties in the maximum resolve to the smallest index.
template <class Scalar>
Posterior<Scalar> posterior_uniform_prior(const OutcomeLikelihood<Scalar>& likelihood) {
    const Scalar total = likelihood.probs().sum();
    if (!(total > Scalar(0))) {
        throw std::domain_error("posterior_uniform_prior: outcome never occurs");
    }
    RealVector<Scalar> posterior = likelihood.probs() / total;
    Index argmax = 0;
    for (Index a = 1; a < posterior.size(); ++a) {
        if (posterior[a] > posterior[argmax]) {
            argmax = a;
        }
    }
    return {std::move(posterior), argmax};
}

/// Normalizes |C_k|^2 into the observable disturbance distribution
/// p(b+k|b,m) = |C_k|^2 / sum_k' |C_k'|^2.
template <class Scalar>
DisturbanceDistribution<Scalar> disturbance_distribution(const DisturbanceSpectrum<Scalar>& spectrum) {
    RealVector<Scalar> weights = spectrum.coeffs().cwiseAbs2();
    const Scalar total = weights.sum();
    if (!(total > Scalar(0))) {
        throw std::domain_error("disturbance_distribution '" + spectrum.label() +
                                "': zero spectrum, outcome never occurs");
    }
    return DisturbanceDistribution<Scalar>(weights / total, spectrum.label());
}

/**
 * The information bound computed from an observable disturbance pattern:
 *
 *     (1/d) * (sum_k sqrt(p(b+k|b,m)))^2.
 *
 * Lies in [1/d, 1]: a point mass — one certain shift, in particular the
 * undisturbed case k = 0 — forces the random-guess value 1/d, while only
 * the exactly uniform shift pattern reaches 1. Even the slightest
 * preference for one shift pulls the bound below 1.
 */
template <class Scalar>
Scalar information_bound(const DisturbanceDistribution<Scalar>& dist) {
    const Scalar root_sum = dist.probs().cwiseSqrt().sum();
    return root_sum * root_sum / static_cast<Scalar>(dist.size());
}

/// sum_k |C_k|: the largest value any reconstructed amplitude sqrt(p(m|a))
/// can reach, attained when the phases of all C_k line up at some a.
template <class Scalar>
Scalar phase_aligned_amplitude_bound(const DisturbanceSpectrum<Scalar>& spectrum) {
    return spectrum.coeffs().cwiseAbs().sum();
}

/**
 * Full evaluation of one outcome: spectrum, disturbance distribution,
 * information bound, and posterior, checked against each other.
 *
 * Throws std::logic_error if the computed posterior ever exceeded the bound
 * by more than kPhysicsTol; that identity is structural and a violation
 * means a broken build, not bad input.
 */
template <class Scalar>
BoundReport<Scalar> evaluate_tradeoff(const OutcomeLikelihood<Scalar>& likelihood) {
    const auto spectrum = spectrum_from_likelihood(likelihood);
    const auto dist = disturbance_distribution(spectrum);
    const Scalar bound = information_bound(dist);
    const auto posterior = posterior_uniform_prior(likelihood);
    const Scalar max_posterior = posterior.max();

    const Scalar slack = bound - max_posterior;
    if (slack < -Scalar(kPhysicsTol)) {
        throw std::logic_error("evaluate_tradeoff '" + likelihood.label() +
                               "': posterior exceeds the information bound (slack " +
                               std::to_string(static_cast<double>(slack)) + ")");
    }
    const Scalar d = static_cast<Scalar>(likelihood.size());
    if (bound < Scalar(1) / d - Scalar(kPhysicsTol) || bound > Scalar(1) + Scalar(kPhysicsTol)) {
        throw std::logic_error("evaluate_tradeoff '" + likelihood.label() +
                               "': bound outside [1/d, 1]");
    }

    bool tie = false;
    for (Index a = 0; a < posterior.probs.size(); ++a) {
        if (a != posterior.argmax_index &&
            posterior.probs[a] >= max_posterior - Scalar(kPhysicsTol)) {
            tie = true;
            break;
        }
    }
    return {likelihood.label(), bound,   max_posterior,          slack,
            slack < Scalar(kPhysicsTol), posterior.argmax_index, tie};
}

} // namespace qdisturb
