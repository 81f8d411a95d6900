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
 * Hilbert-space primitives at dimension d: pure states tagged with the basis
 * their amplitudes refer to, outcome likelihoods p(m|a), the diagonal
 * measurement operators built from them, and the cyclic shift unitaries that
 * exchange phase patterns in one basis for index shifts in the conjugate one.
 *
 * Everything here is an immutable value type; all operations are pure
 * functions and safe to call concurrently.
 *
 * Operators are stored by their eigenvalue vector, never as dense d x d
 * matrices: every operator in scope is diagonal in the computational basis
 * or monomial in the Fourier basis. Dense materialization lives in
 * oracle.hpp and is meant for small-d cross-checks only.
 */

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "qdisturb/common.hpp"

namespace qdisturb {

/**
 * A normalized pure state together with the basis its amplitudes refer to.
 *
 * The squared amplitudes must sum to 1 within kPhysicsTol; use
 * PureState::normalized to rescale arbitrary coefficient vectors.
 */
template <class Scalar = double>
class PureState {
  public:
    using Complex = std::complex<Scalar>;
    using Vector = ComplexVector<Scalar>;

    PureState(Vector amplitudes, Basis basis)
        : amps_(std::move(amplitudes)), basis_(basis) {
        Dimension dim(amps_.size()); // range check
        const Scalar norm2 = amps_.squaredNorm();
        if (std::abs(norm2 - Scalar(1)) > Scalar(kPhysicsTol)) {
            throw std::invalid_argument(
                "PureState: amplitudes are not normalized (|psi|^2 = " +
                std::to_string(static_cast<double>(norm2)) + ")");
        }
    }

    /// Basis vector |index> of the given basis.
    static PureState basis_state(Index index, Dimension dim, Basis basis) {
        if (index < 0 || index >= dim.value()) {
            throw std::out_of_range("PureState::basis_state: index out of range");
        }
        Vector amps = Vector::Zero(dim.value());
        amps[index] = Complex(1);
        return PureState(std::move(amps), basis);
    }

    /// Rescales an arbitrary nonzero coefficient vector onto the unit sphere.
    static PureState normalized(Vector amplitudes, Basis basis) {
        const Scalar norm = amplitudes.norm();
        if (!(norm > Scalar(0))) {
            throw std::invalid_argument("PureState::normalized: zero vector");
        }
        amplitudes /= norm;
        return PureState(std::move(amplitudes), basis);
    }

    const Vector& amplitudes() const { return amps_; }
    Basis basis() const { return basis_; }
    Index size() const { return amps_.size(); }
    Dimension dim() const { return Dimension(amps_.size()); }

  private:
    Vector amps_;
    Basis basis_;
};

/**
 * The conditional probabilities p(m|a) of one fixed measurement outcome m
 * over all inputs a. This vector is the complete description of the
 * corresponding minimally disturbing measurement operator.
 *
 * Entries must lie in [0, 1] (boundary violations up to 1e-12 are snapped to
 * the boundary) and at least one entry must be strictly positive: an
 * all-zero outcome never occurs and has no operator.
 */
template <class Scalar = double>
class OutcomeLikelihood {
  public:
    OutcomeLikelihood(RealVector<Scalar> conditional_probs, std::string outcome_label = "m")
        : probs_(std::move(conditional_probs)), label_(std::move(outcome_label)) {
        Dimension dim(probs_.size());
        constexpr Scalar slack = Scalar(1e-12);
        bool any_positive = false;
        for (Index a = 0; a < probs_.size(); ++a) {
            Scalar& p = probs_[a];
            if (p < Scalar(0)) {
                if (p < -slack) {
                    throw std::invalid_argument(
                        "OutcomeLikelihood '" + label_ + "': entry " +
                        std::to_string(static_cast<double>(p)) + " at index " +
                        std::to_string(a) + " is outside [0, 1]");
                }
                p = Scalar(0);
            } else if (p > Scalar(1)) {
                if (p > Scalar(1) + slack) {
                    throw std::invalid_argument(
                        "OutcomeLikelihood '" + label_ + "': entry " +
                        std::to_string(static_cast<double>(p)) + " at index " +
                        std::to_string(a) + " is outside [0, 1]");
                }
                p = Scalar(1);
            }
            any_positive = any_positive || p > Scalar(0);
        }
        if (!any_positive) {
            throw std::invalid_argument("OutcomeLikelihood '" + label_ +
                                        "': all-zero likelihood, outcome never occurs");
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

/**
 * A complete set of outcome likelihoods: for every input a the outcome
 * probabilities sum to 1 within kPhysicsTol, which for diagonal operators is
 * the resolution of the identity sum_m M_m^dag M_m = 1.
 */
template <class Scalar = double>
class MeasurementModel {
  public:
    explicit MeasurementModel(std::vector<OutcomeLikelihood<Scalar>> outcomes)
        : outcomes_(std::move(outcomes)) {
        if (outcomes_.empty()) {
            throw std::invalid_argument("MeasurementModel: no outcomes");
        }
        const Index d = outcomes_.front().size();
        for (const auto& outcome : outcomes_) {
            if (outcome.size() != d) {
                throw std::invalid_argument("MeasurementModel: outcome '" + outcome.label() +
                                            "' has mismatched dimension");
            }
        }
        for (Index a = 0; a < d; ++a) {
            Scalar column_sum = 0;
            for (const auto& outcome : outcomes_) {
                column_sum += outcome.probs()[a];
            }
            if (std::abs(column_sum - Scalar(1)) > Scalar(kPhysicsTol)) {
                throw std::invalid_argument(
                    "MeasurementModel: incomplete model, sum_m p(m|a) = " +
                    std::to_string(static_cast<double>(column_sum)) + " at a = " +
                    std::to_string(a));
            }
        }
    }

    const std::vector<OutcomeLikelihood<Scalar>>& outcomes() const { return outcomes_; }
    Index n_outcomes() const { return static_cast<Index>(outcomes_.size()); }
    Dimension dim() const { return outcomes_.front().dim(); }

  private:
    std::vector<OutcomeLikelihood<Scalar>> outcomes_;
};

/**
 * A minimally disturbing measurement operator: positive, self-adjoint, and
 * diagonal in the computational basis with eigenvalues sqrt(p(m|a)) in
 * [0, 1]. Such an operator changes an input state by exactly the Bayesian
 * reweighting of its computational amplitudes, nothing more.
 */
template <class Scalar = double>
class MeasurementOperator {
  public:
    explicit MeasurementOperator(RealVector<Scalar> eigenvalues)
        : eigenvalues_(std::move(eigenvalues)) {
        Dimension dim(eigenvalues_.size());
        constexpr Scalar slack = Scalar(1e-12);
        for (Index a = 0; a < eigenvalues_.size(); ++a) {
            Scalar& v = eigenvalues_[a];
            if (v < Scalar(0) || v > Scalar(1) + slack) {
                throw std::invalid_argument(
                    "MeasurementOperator: eigenvalue " +
                    std::to_string(static_cast<double>(v)) + " at index " +
                    std::to_string(a) + " is outside [0, 1]");
            }
            v = std::min(v, Scalar(1));
        }
    }

    const RealVector<Scalar>& eigenvalues() const { return eigenvalues_; }
    Index size() const { return eigenvalues_.size(); }
    Dimension dim() const { return Dimension(eigenvalues_.size()); }

  private:
    RealVector<Scalar> eigenvalues_;
};

/**
 * The cyclic shift unitary U(k). In the computational basis it is the pure
 * phase pattern exp(+i 2 pi k a / d); on the Fourier basis it acts as the
 * index shift b -> (b + k) mod d. Any integer k is accepted and reduced
 * mod d.
 */
class ShiftUnitary {
  public:
    ShiftUnitary(Index k, Dimension dim) : k_(mod_index(k, dim.value())), dim_(dim) {}

    Index shift() const { return k_; }
    Dimension dim() const { return dim_; }

  private:
    Index k_;
    Dimension dim_;
};

/// Builds the measurement operator for one outcome: eigenvalues are the
/// entrywise square roots sqrt(p(m|a)).
template <class Scalar>
MeasurementOperator<Scalar> make_operator(const OutcomeLikelihood<Scalar>& likelihood) {
    return MeasurementOperator<Scalar>(likelihood.probs().cwiseSqrt());
}

/**
 * The Fourier-conjugate basis state |b>, expressed through its computational
 * amplitudes <a|b> = exp(+i 2 pi a b / d) / sqrt(d).
 *
 * The sign of the exponent is fixed by requiring that the shift unitaries
 * advance the Fourier index, apply_shift(U(k), |b>) == |b + k>; together
 * with the phase convention of ShiftUnitary this pins the whole transform.
 */
template <class Scalar = double>
PureState<Scalar> fourier_state(Index b, Dimension dim) {
    const Index d = dim.value();
    if (b < 0 || b >= d) {
        throw std::out_of_range("fourier_state: index b out of range");
    }
    const auto roots = unit_roots<Scalar>(d);
    const Scalar inv_sqrt_d = Scalar(1) / std::sqrt(static_cast<Scalar>(d));
    ComplexVector<Scalar> amps(d);
    for (Index a = 0; a < d; ++a) {
        amps[a] = inv_sqrt_d * roots[(a * b) % d];
    }
    return PureState<Scalar>(std::move(amps), Basis::Computational);
}

/**
 * Re-expresses a state in the requested basis via the discrete Fourier
 * transform (O(d^2), exact index arithmetic). A no-op when the state already
 * carries the target tag.
 */
template <class Scalar>
PureState<Scalar> to_basis(const PureState<Scalar>& state, Basis target) {
    if (state.basis() == target) {
        return state;
    }
    const Index d = state.size();
    const auto roots = unit_roots<Scalar>(d);
    const Scalar inv_sqrt_d = Scalar(1) / std::sqrt(static_cast<Scalar>(d));
    ComplexVector<Scalar> out(d);
    const auto& in = state.amplitudes();
    if (target == Basis::Fourier) {
        // beta_b = <b|psi> = (1/sqrt d) sum_a exp(-i 2 pi a b / d) alpha_a
        for (Index b = 0; b < d; ++b) {
            std::complex<Scalar> acc{};
            for (Index a = 0; a < d; ++a) {
                acc += std::conj(roots[(a * b) % d]) * in[a];
            }
            out[b] = inv_sqrt_d * acc;
        }
    } else {
        // alpha_a = (1/sqrt d) sum_b exp(+i 2 pi a b / d) beta_b
        for (Index a = 0; a < d; ++a) {
            std::complex<Scalar> acc{};
            for (Index b = 0; b < d; ++b) {
                acc += roots[(a * b) % d] * in[b];
            }
            out[a] = inv_sqrt_d * acc;
        }
    }
    return PureState<Scalar>(std::move(out), target);
}

/// <lhs|rhs> for two states expressed in the same basis.
template <class Scalar>
std::complex<Scalar> inner_product(const PureState<Scalar>& lhs, const PureState<Scalar>& rhs) {
    if (lhs.basis() != rhs.basis()) {
        throw std::invalid_argument(std::string("inner_product: mixed bases (") +
                                    to_string(lhs.basis()) + " vs " + to_string(rhs.basis()) +
                                    "); convert with to_basis first");
    }
    if (lhs.size() != rhs.size()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    return lhs.amplitudes().dot(rhs.amplitudes());
}

/**
 * Applies the shift unitary in whichever basis the state carries:
 * computational amplitudes pick up the phases exp(+i 2 pi k a / d), Fourier
 * amplitudes move from index b to (b + k) mod d. Norm is preserved to
 * kArithmeticTol.
 */
template <class Scalar>
PureState<Scalar> apply_shift(const ShiftUnitary& unitary, const PureState<Scalar>& state) {
    const Index d = state.size();
    if (unitary.dim().value() != d) {
        throw std::invalid_argument("apply_shift: dimension mismatch");
    }
    const Index k = unitary.shift();
    const auto& in = state.amplitudes();
    ComplexVector<Scalar> out(d);
    if (state.basis() == Basis::Computational) {
        const auto roots = unit_roots<Scalar>(d);
        for (Index a = 0; a < d; ++a) {
            out[a] = roots[(k * a) % d] * in[a];
        }
    } else {
        for (Index b = 0; b < d; ++b) {
            out[mod_index(b + k, d)] = in[b];
        }
    }
    return PureState<Scalar>(std::move(out), state.basis());
}

/**
 * Tr(U(k)^dag U(k')) = sum_a exp(+i 2 pi (k' - k) a / d).
 *
 * Equals d for k == k' and vanishes otherwise, which makes the d shift
 * unitaries an orthogonal operator basis for everything diagonal in the
 * computational basis.
 */
template <class Scalar = double>
std::complex<Scalar> unitary_overlap(Index k, Index k_prime, Dimension dim) {
    const Index d = dim.value();
    if (k < 0 || k >= d || k_prime < 0 || k_prime >= d) {
        throw std::out_of_range("unitary_overlap: shift index out of range");
    }
    const auto roots = unit_roots<Scalar>(d);
    const Index delta = mod_index(k_prime - k, d);
    std::complex<Scalar> acc{};
    for (Index a = 0; a < d; ++a) {
        acc += roots[(delta * a) % d];
    }
    return acc;
}

/// Outcome probability and normalized post-measurement state.
template <class Scalar = double>
struct MeasurementOutcome {
    Scalar probability;
    PureState<Scalar> post_state;
};

/**
 * Applies a measurement operator to a normalized state: the outcome
 * probability is |M psi|^2 and the post state is M psi renormalized,
 * returned in the basis the input carried.
 *
 * Throws std::domain_error when the outcome probability falls below
 * kImpossibleOutcomeTol; no post state is defined for an outcome that
 * cannot occur.
 */
template <class Scalar>
MeasurementOutcome<Scalar> apply_measurement(const MeasurementOperator<Scalar>& op,
                                             const PureState<Scalar>& state) {
    if (op.size() != state.size()) {
        throw std::invalid_argument("apply_measurement: dimension mismatch");
    }
    const Basis original = state.basis();
    const PureState<Scalar> working = to_basis(state, Basis::Computational);
    ComplexVector<Scalar> amps =
        working.amplitudes().cwiseProduct(op.eigenvalues().template cast<std::complex<Scalar>>());
    const Scalar probability = amps.squaredNorm();
    if (probability < Scalar(kImpossibleOutcomeTol)) {
        throw std::domain_error("apply_measurement: outcome impossible for this input");
    }
    amps /= std::sqrt(probability);
    PureState<Scalar> post(std::move(amps), Basis::Computational);
    return {probability, to_basis(post, original)};
}

} // namespace qdisturb
