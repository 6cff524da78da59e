// Copyright 2026 The DualityLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dualitylab/optics.hpp"

#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace dualitylab;
using namespace dualitylab::optics;
using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::ComplexVector;
using test::kDegToRad;

namespace {

ComplexMatrix hadamard() {
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::numbers::sqrt2;
}

ComplexMatrix sigma_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

/// The final wave-mode state quoted for the family:
/// (1/sqrt 2)[sin t (|H>-|V>)|1> + cos t (|H>+|V>)|2>].
ComplexVector quoted_final_state(double theta_deg) {
    const double t = theta_deg * kDegToRad;
    ComplexVector v(4);
    v << std::sin(t), -std::sin(t), std::cos(t), std::cos(t);
    return v / std::numbers::sqrt2;
}

}  // namespace

TEST_CASE("detector angle range") {
    CHECK_THROWS_AS(DetectorAngle(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(DetectorAngle(90.5), std::invalid_argument);
    CHECK(DetectorAngle(90.0).degrees() == 90.0);
}

TEST_CASE("detector states") {
    SUBCASE("theta = 0 collapses both onto H") {
        const auto [eta1, eta2] = detector_states(DetectorAngle(0.0));
        CHECK(std::abs(eta1.amplitude(0) - Complex{1, 0}) < 1e-15);
        CHECK(std::abs(eta1.amplitude(1)) < 1e-15);
        CHECK(qmath::max_abs(eta1.amplitudes() - eta2.amplitudes()) < 1e-15);
    }
    SUBCASE("theta = 45 gives the orthogonal diagonal pair") {
        const auto [eta1, eta2] = detector_states(DetectorAngle(45.0));
        const double s = 1.0 / std::numbers::sqrt2;
        CHECK(std::abs(eta1.amplitude(0) - Complex{s, 0}) < 1e-12);
        CHECK(std::abs(eta1.amplitude(1) - Complex{s, 0}) < 1e-12);
        CHECK(std::abs(eta2.amplitude(1) + Complex{s, 0}) < 1e-12);
        CHECK(std::abs(eta1.overlap(eta2)) < 1e-12);
    }
    SUBCASE("theta = 22.5 overlap is cos 45") {
        const auto [eta1, eta2] = detector_states(DetectorAngle(22.5));
        CHECK(eta1.overlap(eta2).real() ==
              doctest::Approx(0.7071068).epsilon(1e-6));
    }
    SUBCASE("overlap equals cos 2 theta on a grid") {
        for (int k = 0; k <= 36; ++k) {
            const double theta = 2.5 * k;
            const auto [eta1, eta2] = detector_states(DetectorAngle(theta));
            CHECK(std::abs(eta1.overlap(eta2).real() -
                           std::cos(2.0 * theta * kDegToRad)) < 1e-12);
            CHECK(std::abs(eta1.overlap(eta2).imag()) < 1e-15);
        }
    }
}

TEST_CASE("joint state amplitudes") {
    SUBCASE("theta = 0") {
        const PureState psi = joint_state(DetectorAngle(0.0));
        const double s = 1.0 / std::numbers::sqrt2;
        CHECK(std::abs(psi.amplitude(0) - Complex{s, 0}) < 1e-15);
        CHECK(std::abs(psi.amplitude(1)) < 1e-15);
        CHECK(std::abs(psi.amplitude(2) - Complex{s, 0}) < 1e-15);
        CHECK(std::abs(psi.amplitude(3)) < 1e-15);
    }
    SUBCASE("theta = 45") {
        const PureState psi = joint_state(DetectorAngle(45.0));
        CHECK(std::abs(psi.amplitude(0) - Complex{0.5, 0}) < 1e-12);
        CHECK(std::abs(psi.amplitude(1) - Complex{0.5, 0}) < 1e-12);
        CHECK(std::abs(psi.amplitude(2) - Complex{0.5, 0}) < 1e-12);
        CHECK(std::abs(psi.amplitude(3) + Complex{0.5, 0}) < 1e-12);
    }
    SUBCASE("partial trace reproduces the closed-form target at random theta") {
        rng::Substream s(2026, 0, 0);
        for (int rep = 0; rep < 10; ++rep) {
            const double theta = 90.0 * s.next_double();
            const qmath::DensityMatrix rho =
                qmath::partial_trace(joint_state(DetectorAngle(theta))
                                         .projector(),
                                     {2, 2}, qmath::Subsystem::First);
            const double off = std::cos(2.0 * theta * kDegToRad) / 2.0;
            ComplexMatrix expect(2, 2);
            expect << 0.5, off, off, 0.5;
            CHECK(qmath::max_abs(rho.matrix() - expect) < 1e-12);
        }
    }
    SUBCASE("exchanging branches matches the sign-flipped construction") {
        // Swapping (path 1, eta1) with (path 2, eta2) equals flipping the
        // sign of the V components, i.e. theta -> -theta.
        for (double theta : {5.0, 30.0, 60.0}) {
            const PureState psi = joint_state(DetectorAngle(theta));
            const double t = theta * kDegToRad;
            ComplexVector swapped(4);
            swapped << psi.amplitude(2), psi.amplitude(3), psi.amplitude(0),
                psi.amplitude(1);
            ComplexVector flipped(4);
            flipped << std::cos(t), -std::sin(t), std::cos(t), std::sin(t);
            flipped /= std::numbers::sqrt2;
            CHECK(qmath::max_abs(swapped - flipped) < 1e-15);
        }
    }
}

TEST_CASE("target state closed form") {
    CHECK(qmath::max_abs(target_state(DetectorAngle(0.0)).matrix() -
                         (ComplexMatrix(2, 2) << 0.5, 0.5, 0.5, 0.5)
                             .finished()) < 1e-12);
    CHECK(qmath::max_abs(target_state(DetectorAngle(45.0)).matrix() -
                         ComplexMatrix::Identity(2, 2) / 2.0) < 1e-12);
    CHECK(target_state(DetectorAngle(30.0)).entry(0, 1).real() ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("element matrices") {
    SUBCASE("HWP at 45 swaps H and V on its path only") {
        const ComplexMatrix m =
            element_matrix(Hwp{45.0, {0}}, 2);
        ComplexVector in = ComplexVector::Zero(4);
        in(0) = 1.0;  // (path 1, H)
        CHECK(std::abs((m * in)(1) - Complex{1, 0}) < 1e-12);
        in.setZero();
        in(2) = 1.0;  // (path 2, H) untouched
        CHECK(std::abs((m * in)(2) - Complex{1, 0}) < 1e-12);
    }
    SUBCASE("HWP at 22.5 creates the equal superposition from H") {
        const ComplexMatrix m = element_matrix(Hwp{22.5, {0}}, 1);
        ComplexVector in(2);
        in << 1.0, 0.0;
        const ComplexVector out = m * in;
        const double s = 1.0 / std::numbers::sqrt2;
        CHECK(std::abs(out(0) - Complex{s, 0}) < 1e-12);
        CHECK(std::abs(out(1) - Complex{s, 0}) < 1e-12);
    }
    SUBCASE("180-degree phase on path 2") {
        const ComplexMatrix m = element_matrix(PhaseShift{180.0, {1}}, 2);
        ComplexMatrix expect = ComplexMatrix::Identity(4, 4);
        expect(2, 2) = -1.0;
        expect(3, 3) = -1.0;
        CHECK(qmath::max_abs(m - expect) < 1e-12);
    }
    SUBCASE("every element is unitary") {
        const std::vector<OpticalElement> elements = {
            Hwp{13.7, {0, 1}}, Qwp{29.1, {0}},   Qwp{45.0, {0, 1}},
            PhaseShift{77.0, {1}}, Identity{},
            BeamDisplacer{{{1, 2}, {2, 1}}},
        };
        for (const auto& e : elements) {
            const ComplexMatrix u = element_matrix(e, 2);
            CHECK(qmath::max_abs(u.adjoint() * u -
                                 ComplexMatrix::Identity(4, 4)) < 1e-12);
        }
    }
    SUBCASE("QWP at 45 produces circular polarization") {
        const ComplexMatrix m = element_matrix(Qwp{45.0, {0}}, 1);
        ComplexVector in(2);
        in << 1.0, 0.0;
        ComplexVector out = m * in;
        out /= out(0);  // strip the global phase
        CHECK(std::abs(out(1) - Complex{0.0, -1.0}) < 1e-12);
    }
    SUBCASE("invalid routing map is rejected") {
        CHECK_THROWS_AS(element_matrix(BeamDisplacer{{{0, 1}}}, 2),
                        std::invalid_argument);
    }
}

TEST_CASE("circuit mode parameters") {
    // Wave: HWP4 at 0 degrees plus the 180-degree phase; particle: HWP4 at
    // 45 degrees and no phase element.
    bool wave_has_hwp0 = false;
    bool wave_has_phase180 = false;
    for (const auto& e : circuit_elements(CircuitMode::WaveMeasurement)) {
        if (const auto* hwp = std::get_if<Hwp>(&e)) {
            wave_has_hwp0 = wave_has_hwp0 || hwp->angle_deg == 0.0;
        }
        if (const auto* ph = std::get_if<PhaseShift>(&e)) {
            wave_has_phase180 = wave_has_phase180 || ph->phase_deg == 180.0;
        }
    }
    CHECK(wave_has_hwp0);
    CHECK(wave_has_phase180);
    bool particle_has_hwp45 = false;
    bool particle_has_phase = false;
    for (const auto& e : circuit_elements(CircuitMode::ParticleMeasurement)) {
        if (const auto* hwp = std::get_if<Hwp>(&e)) {
            particle_has_hwp45 = particle_has_hwp45 || hwp->angle_deg == 45.0;
        }
        particle_has_phase =
            particle_has_phase || std::holds_alternative<PhaseShift>(e);
    }
    CHECK(particle_has_hwp45);
    CHECK_FALSE(particle_has_phase);
}

TEST_CASE("composite unitary closed forms") {
    SUBCASE("particle mode is the identity") {
        CHECK(qmath::phase_aligned_distance(
                  composite_unitary(CircuitMode::ParticleMeasurement),
                  ComplexMatrix::Identity(4, 4)) < 1e-12);
    }
    SUBCASE("wave mode equals (sigma_x H) (x) H built by the tensor oracle") {
        const ComplexMatrix expect =
            qmath::tensor(ComplexMatrix(sigma_x() * hadamard()), hadamard());
        CHECK(qmath::phase_aligned_distance(
                  composite_unitary(CircuitMode::WaveMeasurement), expect) <
              1e-10);
    }
    SUBCASE("wave mode maps the family onto the quoted final state") {
        const ComplexMatrix u = composite_unitary(CircuitMode::WaveMeasurement);
        for (int k = 0; k <= 18; ++k) {
            const double theta = 2.5 * k;
            const ComplexVector out =
                u * joint_state(DetectorAngle(theta)).amplitudes();
            CHECK(qmath::max_abs(out - quoted_final_state(theta)) < 1e-10);
        }
    }
    SUBCASE("wave mode sends the target eigenbasis onto the path basis") {
        const ComplexMatrix u = composite_unitary(CircuitMode::WaveMeasurement);
        for (int k = 0; k <= 18; ++k) {
            const double theta = 2.5 * k;
            const double t = theta * kDegToRad;
            const ComplexVector out =
                u * joint_state(DetectorAngle(theta)).amplitudes();
            const double p1 = std::norm(out(0)) + std::norm(out(1));
            const double p2 = std::norm(out(2)) + std::norm(out(3));
            CHECK(p1 == doctest::Approx(std::sin(t) * std::sin(t))
                            .epsilon(1e-12));
            CHECK(p2 == doctest::Approx(std::cos(t) * std::cos(t))
                            .epsilon(1e-12));
        }
    }
}

TEST_CASE("symmetric detector ensembles") {
    SUBCASE("uniform pairwise overlap") {
        for (double c : {0.0, 0.3, 0.9}) {
            const auto states = symmetric_detector_states(3, c);
            REQUIRE(states.size() == 3);
            for (std::size_t i = 0; i < states.size(); ++i) {
                for (std::size_t j = i + 1; j < states.size(); ++j) {
                    const Complex ov = states[i].overlap(states[j]);
                    CHECK(std::abs(ov.real() - c) < 1e-12);
                    CHECK(std::abs(ov.imag()) < 1e-12);
                }
            }
        }
    }
    SUBCASE("overlap range is enforced") {
        CHECK_THROWS_AS(symmetric_detector_states(3, -0.6),
                        std::invalid_argument);
        CHECK_THROWS_AS(symmetric_detector_states(3, 1.1),
                        std::invalid_argument);
    }
    SUBCASE("N-path target state entries") {
        const auto rho = target_state_n(3, 0.4);
        for (Eigen::Index i = 0; i < 3; ++i) {
            for (Eigen::Index j = 0; j < 3; ++j) {
                const double expect = i == j ? 1.0 / 3.0 : 0.4 / 3.0;
                CHECK(std::abs(rho.entry(i, j) - Complex{expect, 0.0}) <
                      1e-12);
            }
        }
    }
}
