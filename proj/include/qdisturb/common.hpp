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
 * Shared numeric types, tolerances, and index utilities. The linear-algebra
 * layer is Eigen; every quantity is a dense Eigen vector or matrix over a
 * caller-chosen real scalar (double by default).
 */

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdisturb {

using Index = Eigen::Index;

template <class Scalar>
using RealVector = Eigen::Vector<Scalar, Eigen::Dynamic>;

template <class Scalar>
using ComplexVector = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;

template <class Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Tolerance for physics-level assertions: state normalization, model
/// completeness, distribution sums, inequality slack.
inline constexpr double kPhysicsTol = 1e-9;

/// Tolerance for pure arithmetic identities: unitarity, shift-group
/// composition, basis-change roundtrips.
inline constexpr double kArithmeticTol = 1e-12;

/// Squared-norm threshold below which a measurement outcome is treated as
/// impossible for the given input. No post-measurement state exists then.
inline constexpr double kImpossibleOutcomeTol = 1e-15;

/**
 * Hilbert-space dimension d.
 *
 * A one-dimensional space admits neither information gain nor disturbance,
 * so d >= 2. The upper limit keeps the O(d^2) transforms comfortably inside
 * double-precision tolerances.
 */
class Dimension {
  public:
    static constexpr Index kMin = 2;
    static constexpr Index kMax = 4096;

    explicit Dimension(Index d) : d_(d) {
        if (d < kMin || d > kMax) {
            throw std::out_of_range("Dimension: d must lie in [" +
                                    std::to_string(kMin) + ", " +
                                    std::to_string(kMax) + "], got " +
                                    std::to_string(d));
        }
    }

    Index value() const { return d_; }

    friend bool operator==(Dimension lhs, Dimension rhs) { return lhs.d_ == rhs.d_; }
    friend bool operator!=(Dimension lhs, Dimension rhs) { return lhs.d_ != rhs.d_; }

  private:
    Index d_;
};

/**
 * Basis tag carried by every state vector.
 *
 * Computational amplitudes are indexed by the eigenvalue label a of the
 * measurement operators; Fourier amplitudes by the conjugate label b.
 * Mixing tags is an error, never a silent reinterpretation of amplitudes.
 */
enum class Basis { Computational, Fourier };

constexpr const char* to_string(Basis basis) {
    return basis == Basis::Computational ? "computational" : "fourier";
}

/// Reduces any integer index into [0, d-1]; negatives wrap the floored way,
/// mod_index(-1, d) == d - 1.
constexpr Index mod_index(Index i, Index d) {
    const Index r = i % d;
    return r < 0 ? r + d : r;
}

/// The d-th roots of unity exp(+i 2 pi j / d), j = 0..d-1. Negative
/// exponents are reached by indexing (d - j) % d or by conjugating.
template <class Scalar>
ComplexVector<Scalar> unit_roots(Index d) {
    ComplexVector<Scalar> roots(d);
    const Scalar step = Scalar(2) * std::numbers::pi_v<Scalar> / static_cast<Scalar>(d);
    for (Index j = 0; j < d; ++j) {
        roots[j] = std::polar(Scalar(1), step * static_cast<Scalar>(j));
    }
    return roots;
}

} // namespace qdisturb
