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

#include "qdisturb/core.hpp"

#include <doctest.h>

#include "qdisturb/oracle.hpp"

using namespace qdisturb;

namespace {

PureState<double> random_state(Dimension dim, Basis basis, oracle::Rng& rng) {
    ComplexVector<double> amps(dim.value());
    for (Index i = 0; i < dim.value(); ++i) {
        amps[i] = std::complex<double>(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    }
    return PureState<double>::normalized(std::move(amps), basis);
}

double max_amplitude_gap(const PureState<double>& lhs, const PureState<double>& rhs) {
    REQUIRE(lhs.basis() == rhs.basis());
    return (lhs.amplitudes() - rhs.amplitudes()).cwiseAbs().maxCoeff();
}

} // namespace

TEST_SUITE_BEGIN("core");

TEST_CASE("Dimension accepts [2, 4096] and rejects the rest") {
    CHECK(Dimension(2).value() == 2);
    CHECK(Dimension(4096).value() == 4096);
    CHECK_THROWS_AS(Dimension(1), std::out_of_range);
    CHECK_THROWS_AS(Dimension(0), std::out_of_range);
    CHECK_THROWS_AS(Dimension(-3), std::out_of_range);
    CHECK_THROWS_AS(Dimension(4097), std::out_of_range);
}

TEST_CASE("PureState validates normalization and carries its basis tag") {
    ComplexVector<double> amps(2);
    amps << std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 0.0);
    const PureState<double> state(amps, Basis::Computational);
    CHECK(state.basis() == Basis::Computational);
    CHECK(state.size() == 2);

    amps << 0.5, 0.5; // squared norm 0.5
    CHECK_THROWS_AS(PureState<double>(amps, Basis::Computational), std::invalid_argument);
    CHECK(PureState<double>::normalized(amps, Basis::Fourier).amplitudes().squaredNorm() ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("OutcomeLikelihood enforces [0,1] entries and a positive entry") {
    RealVector<double> p(2);
    p << 0.6, 0.4;
    const OutcomeLikelihood<double> likelihood(p, "m0");
    CHECK(likelihood.label() == "m0");

    p << 1.5, 0.0;
    CHECK_THROWS_AS(OutcomeLikelihood<double>{p}, std::invalid_argument);
    p << -0.2, 0.5;
    CHECK_THROWS_AS(OutcomeLikelihood<double>{p}, std::invalid_argument);
    p << 0.0, 0.0;
    CHECK_THROWS_AS(OutcomeLikelihood<double>{p}, std::invalid_argument);

    // boundary roundoff snaps instead of throwing
    p << 1.0 + 5e-13, -5e-13;
    const OutcomeLikelihood<double> snapped(p);
    CHECK(snapped.probs()[0] == 1.0);
    CHECK(snapped.probs()[1] == 0.0);
}

TEST_CASE("MeasurementModel requires completeness per input") {
    RealVector<double> p0(2), p1(2);
    p0 << 0.7, 0.2;
    p1 << 0.3, 0.8;
    CHECK_NOTHROW(MeasurementModel<double>({OutcomeLikelihood<double>(p0, "m0"),
                                            OutcomeLikelihood<double>(p1, "m1")}));
    p1 << 0.3, 0.7; // column a=1 sums to 0.9
    CHECK_THROWS_AS(MeasurementModel<double>({OutcomeLikelihood<double>(p0, "m0"),
                                              OutcomeLikelihood<double>(p1, "m1")}),
                    std::invalid_argument);
}

TEST_CASE("make_operator takes entrywise square roots") {
    RealVector<double> p(2);
    p << 1.0, 0.0;
    CHECK(make_operator(OutcomeLikelihood<double>(p)).eigenvalues()[0] == 1.0);
    CHECK(make_operator(OutcomeLikelihood<double>(p)).eigenvalues()[1] == 0.0);

    RealVector<double> uniform(3);
    uniform << 1.0 / 3, 1.0 / 3, 1.0 / 3;
    const auto op = make_operator(OutcomeLikelihood<double>(uniform));
    for (Index a = 0; a < 3; ++a) {
        CHECK(op.eigenvalues()[a] == doctest::Approx(0.57735026918962573).epsilon(1e-12));
    }

    p << 0.6, 0.4;
    const auto op2 = make_operator(OutcomeLikelihood<double>(p));
    CHECK(op2.eigenvalues()[0] == doctest::Approx(0.77459666924148340).epsilon(1e-12));
    CHECK(op2.eigenvalues()[1] == doctest::Approx(0.63245553203367588).epsilon(1e-12));
    // squaring recovers the likelihood
    CHECK(op2.eigenvalues()[0] * op2.eigenvalues()[0] == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("fourier_state at d=2 and orthonormality across dimensions") {
    const Dimension d2(2);
    const auto b0 = fourier_state<double>(0, d2);
    CHECK(b0.basis() == Basis::Computational);
    CHECK(b0.amplitudes()[0].real() == doctest::Approx(0.70710678118654746).epsilon(1e-12));
    CHECK(b0.amplitudes()[1].real() == doctest::Approx(0.70710678118654746).epsilon(1e-12));

    const auto b1 = fourier_state<double>(1, d2);
    CHECK(b1.amplitudes()[0].real() == doctest::Approx(0.70710678118654746).epsilon(1e-12));
    CHECK(b1.amplitudes()[1].real() == doctest::Approx(-0.70710678118654746).epsilon(1e-12));

    CHECK_THROWS_AS(fourier_state<double>(2, d2), std::out_of_range);
    CHECK_THROWS_AS(fourier_state<double>(-1, d2), std::out_of_range);

    for (const Index d : {2, 3, 5, 8, 13}) {
        const Dimension dim(d);
        for (Index b = 0; b < d; ++b) {
            for (Index b2 = 0; b2 < d; ++b2) {
                const auto overlap =
                    inner_product(fourier_state<double>(b, dim), fourier_state<double>(b2, dim));
                const double expected = b == b2 ? 1.0 : 0.0;
                CHECK(std::abs(overlap - expected) < 1e-12);
            }
        }
    }
}

TEST_CASE("basis_state in the Fourier basis agrees with fourier_state") {
    const Dimension dim(5);
    for (Index b = 0; b < 5; ++b) {
        const auto via_tag =
            to_basis(PureState<double>::basis_state(b, dim, Basis::Fourier), Basis::Computational);
        CHECK(max_amplitude_gap(via_tag, fourier_state<double>(b, dim)) < 1e-12);
    }
}

TEST_CASE("apply_shift: identity, cycling, inverses, and the shift direction") {
    const Dimension d2(2);
    oracle::Rng rng(11);
    const auto psi = random_state(d2, Basis::Computational, rng);
    CHECK(max_amplitude_gap(apply_shift(ShiftUnitary(0, d2), psi), psi) == 0.0);

    // |b=0> -> |b=1> under U(1)
    const auto shifted = apply_shift(ShiftUnitary(1, d2),
                                     PureState<double>::basis_state(0, d2, Basis::Fourier));
    CHECK(shifted.amplitudes()[1] == std::complex<double>(1.0, 0.0));

    // U(d-1) undoes U(1)
    for (const Index d : {2, 3, 7}) {
        const Dimension dim(d);
        const auto state = random_state(dim, Basis::Computational, rng);
        const auto back =
            apply_shift(ShiftUnitary(d - 1, dim), apply_shift(ShiftUnitary(1, dim), state));
        CHECK(max_amplitude_gap(back, state) < 1e-12);
    }

    // shift direction at d >= 3: U(k)|b> == |b+k mod d> as Fourier amplitudes
    const Dimension d5(5);
    for (Index b = 0; b < 5; ++b) {
        for (Index k = 0; k < 5; ++k) {
            const auto moved = apply_shift(ShiftUnitary(k, d5), fourier_state<double>(b, d5));
            const auto expected = fourier_state<double>(mod_index(b + k, 5), d5);
            CHECK(max_amplitude_gap(moved, expected) < 1e-12);
        }
    }

    CHECK_THROWS_AS(apply_shift(ShiftUnitary(1, d2), random_state(Dimension(3), Basis::Computational, rng)),
                    std::invalid_argument);
}

TEST_CASE("apply_shift preserves norm and composes as a group") {
    oracle::Rng rng(17);
    for (const Index d : {2, 3, 4, 5, 8, 9, 16}) {
        const Dimension dim(d);
        for (int rep = 0; rep < 20; ++rep) {
            const Basis basis = rep % 2 == 0 ? Basis::Computational : Basis::Fourier;
            const auto state = random_state(dim, basis, rng);
            const auto k1 = static_cast<Index>(rng.raw() % static_cast<std::uint64_t>(d));
            const auto k2 = static_cast<Index>(rng.raw() % static_cast<std::uint64_t>(d));

            const auto once = apply_shift(ShiftUnitary(k2, dim), apply_shift(ShiftUnitary(k1, dim), state));
            const auto combined = apply_shift(ShiftUnitary(k1 + k2, dim), state);
            CHECK(max_amplitude_gap(once, combined) < 1e-12);
            CHECK(std::abs(once.amplitudes().squaredNorm() - 1.0) < 1e-12);
        }
    }

    // norm preservation at the top of the supported range
    oracle::Rng big_rng(23);
    const Dimension big(4096);
    const auto state = random_state(big, Basis::Computational, big_rng);
    const auto shifted = apply_shift(ShiftUnitary(1234, big), state);
    CHECK(std::abs(shifted.amplitudes().squaredNorm() - 1.0) < 1e-12);
}

TEST_CASE("shifts acting on Fourier amplitudes match the phase route") {
    oracle::Rng rng(29);
    for (const Index d : {3, 4, 7}) {
        const Dimension dim(d);
        const auto psi = random_state(dim, Basis::Computational, rng);
        for (Index k = 0; k < d; ++k) {
            const ShiftUnitary u(k, dim);
            const auto phase_route = to_basis(apply_shift(u, psi), Basis::Fourier);
            const auto index_route = apply_shift(u, to_basis(psi, Basis::Fourier));
            CHECK(max_amplitude_gap(phase_route, index_route) < 1e-12);
        }
    }
}

TEST_CASE("unitary_overlap equals d on the diagonal and vanishes off it") {
    CHECK(unitary_overlap<double>(2, 2, Dimension(5)).real() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(std::abs(unitary_overlap<double>(0, 1, Dimension(2))) < 1e-12);

    const Dimension d7(7);
    for (Index k = 0; k < 7; ++k) {
        for (Index k2 = 0; k2 < 7; ++k2) {
            const auto overlap = unitary_overlap<double>(k, k2, d7);
            const double expected = k == k2 ? 7.0 : 0.0;
            CHECK(std::abs(overlap - expected) < 1e-9);
        }
    }
    CHECK_THROWS_AS(unitary_overlap<double>(7, 0, d7), std::out_of_range);
}

TEST_CASE("to_basis roundtrips and preserves inner products") {
    oracle::Rng rng(31);
    for (const Index d : {2, 3, 8, 64, 256}) {
        const Dimension dim(d);
        const auto psi = random_state(dim, Basis::Computational, rng);
        const auto back = to_basis(to_basis(psi, Basis::Fourier), Basis::Computational);
        CHECK(max_amplitude_gap(back, psi) < 1e-12);
    }

    CHECK_THROWS_AS(inner_product(random_state(Dimension(3), Basis::Computational, rng),
                                  random_state(Dimension(3), Basis::Fourier, rng)),
                    std::invalid_argument);
}

TEST_CASE("apply_measurement: eigenstates, impossible outcomes, Fourier inputs") {
    const Dimension d2(2);
    RealVector<double> p(2);
    p << 1.0, 0.0;
    const auto projector = make_operator(OutcomeLikelihood<double>(p));

    const auto hit = apply_measurement(projector, PureState<double>::basis_state(0, d2, Basis::Computational));
    CHECK(hit.probability == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(hit.post_state.amplitudes()[0] - 1.0) < 1e-14);

    CHECK_THROWS_AS(apply_measurement(projector,
                                      PureState<double>::basis_state(1, d2, Basis::Computational)),
                    std::domain_error);

    p << 0.6, 0.4;
    const auto op = make_operator(OutcomeLikelihood<double>(p));
    const auto outcome = apply_measurement(op, fourier_state<double>(0, d2));
    CHECK(outcome.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(outcome.post_state.basis() == Basis::Computational);
}

TEST_CASE("eigenrelation: M |a> = sqrt(p(m|a)) |a> for every a") {
    oracle::Rng rng(37);
    const Dimension dim(6);
    const auto likelihood = oracle::random_likelihood(dim, rng);
    const auto op = make_operator(likelihood);
    for (Index a = 0; a < 6; ++a) {
        const auto outcome =
            apply_measurement(op, PureState<double>::basis_state(a, dim, Basis::Computational));
        CHECK(outcome.probability == doctest::Approx(likelihood.probs()[a]).epsilon(1e-14));
        CHECK(std::abs(outcome.post_state.amplitudes()[a] - 1.0) < 1e-14);
    }
}

TEST_CASE("Fourier input amplitudes reproduce the spectrum, shifted by b") {
    oracle::Rng rng(41);
    const Dimension dim(5);
    const auto likelihood = oracle::random_likelihood(dim, rng);
    const auto op = make_operator(likelihood);
    const auto spectrum = spectrum_from_likelihood(likelihood);
    const double norm = std::sqrt(outcome_probability_fourier_input(likelihood));

    for (Index b = 0; b < 5; ++b) {
        const auto outcome =
            apply_measurement(op, PureState<double>::basis_state(b, dim, Basis::Fourier));
        CHECK(outcome.post_state.basis() == Basis::Fourier);
        for (Index b2 = 0; b2 < 5; ++b2) {
            // output amplitude at b' is C_{b'-b} up to the overall renormalization
            const auto expected = spectrum.coeffs()[mod_index(b2 - b, 5)] / norm;
            CHECK(std::abs(outcome.post_state.amplitudes()[b2] - expected) < 1e-12);
        }
    }
}

TEST_CASE("core templates instantiate over long double") {
    const Dimension dim(4);
    const auto state = fourier_state<long double>(1, dim);
    const auto shifted = apply_shift(ShiftUnitary(3, dim), state);
    CHECK(std::abs(shifted.amplitudes().squaredNorm() - 1.0L) < 1e-15L);
    const auto back = to_basis(to_basis(shifted, Basis::Fourier), Basis::Computational);
    CHECK((back.amplitudes() - shifted.amplitudes()).cwiseAbs().maxCoeff() < 1e-15L);
}

TEST_SUITE_END();
