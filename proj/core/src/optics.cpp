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

#include "dualitylab/optics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dualitylab::optics {

namespace {

using qmath::Complex;
using qmath::ComplexVector;

constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument(what);
}

ComplexMatrix hwp_jones(double angle_deg) {
    const double a = 2.0 * angle_deg * kDegToRad;
    ComplexMatrix m(2, 2);
    m << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
    return m;
}

ComplexMatrix qwp_jones(double angle_deg) {
    // Quarter-wave retarder with fast axis at `angle_deg`:
    // R(a) diag(1, i) R(-a).
    const double a = angle_deg * kDegToRad;
    const double c = std::cos(a);
    const double s = std::sin(a);
    const Complex i{0.0, 1.0};
    ComplexMatrix m(2, 2);
    m << c * c + i * s * s, (1.0 - i) * s * c, (1.0 - i) * s * c,
        s * s + i * c * c;
    return m;
}

/// Place a 2x2 polarization operator on the listed paths, identity elsewhere.
ComplexMatrix on_paths(const ComplexMatrix& pol_op,
                       const std::vector<Eigen::Index>& paths,
                       Eigen::Index n_paths) {
    ComplexMatrix m = ComplexMatrix::Identity(2 * n_paths, 2 * n_paths);
    for (Eigen::Index p : paths) {
        if (p < 0 || p >= n_paths) {
            fail("element_matrix: path index out of range");
        }
        m.block(2 * p, 2 * p, 2, 2) = pol_op;
    }
    return m;
}

const std::vector<Eigen::Index> kBothPaths = {0, 1};

/// Polarization-controlled path exchange (1,V) <-> (2,H): the routing a beam
/// displacer performs on the two labelled paths.
BeamDisplacer mid_swap() { return BeamDisplacer{{{1, 2}, {2, 1}}}; }

/// Full path exchange, both polarizations.
BeamDisplacer path_swap() { return BeamDisplacer{{{0, 2}, {2, 0}, {1, 3}, {3, 1}}}; }

}  // namespace

DetectorAngle::DetectorAngle(double degrees) : degrees_(degrees) {
    if (!(degrees >= 0.0 && degrees <= 90.0)) {
        std::ostringstream os;
        os << "DetectorAngle: " << degrees << " outside [0, 90] degrees";
        fail(os.str());
    }
}

double DetectorAngle::radians() const { return degrees_ * kDegToRad; }

std::pair<PureState, PureState> detector_states(DetectorAngle theta) {
    const double c = std::cos(theta.radians());
    const double s = std::sin(theta.radians());
    ComplexVector eta1(2);
    eta1 << c, s;
    ComplexVector eta2(2);
    eta2 << c, -s;
    return {PureState(std::move(eta1)), PureState(std::move(eta2))};
}

PureState joint_state(DetectorAngle theta) {
    const auto [eta1, eta2] = detector_states(theta);
    ComplexVector psi(4);
    psi.segment(0, 2) = eta1.amplitudes() / std::numbers::sqrt2;
    psi.segment(2, 2) = eta2.amplitudes() / std::numbers::sqrt2;
    return PureState(std::move(psi));
}

DensityMatrix target_state(DetectorAngle theta) {
    return qmath::partial_trace(joint_state(theta).projector(), {2, 2},
                                qmath::Subsystem::First);
}

ComplexMatrix element_matrix(const OpticalElement& e, Eigen::Index n_paths) {
    if (n_paths <= 0) {
        fail("element_matrix: n_paths must be positive");
    }
    const Eigen::Index dim = 2 * n_paths;
    return std::visit(
        [&](const auto& el) -> ComplexMatrix {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, Hwp>) {
                return on_paths(hwp_jones(el.angle_deg), el.paths, n_paths);
            } else if constexpr (std::is_same_v<T, Qwp>) {
                return on_paths(qwp_jones(el.angle_deg), el.paths, n_paths);
            } else if constexpr (std::is_same_v<T, PhaseShift>) {
                const Complex ph =
                    std::exp(Complex{0.0, el.phase_deg * kDegToRad});
                ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
                for (Eigen::Index p : el.paths) {
                    if (p < 0 || p >= n_paths) {
                        fail("element_matrix: path index out of range");
                    }
                    m(2 * p, 2 * p) = ph;
                    m(2 * p + 1, 2 * p + 1) = ph;
                }
                return m;
            } else if constexpr (std::is_same_v<T, BeamDisplacer>) {
                ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
                for (const auto& [from, to] : el.routing) {
                    if (from < 0 || from >= dim || to < 0 || to >= dim) {
                        fail("element_matrix: routing index out of range");
                    }
                    m(from, from) = 0.0;
                }
                for (const auto& [from, to] : el.routing) {
                    m(to, from) = 1.0;
                }
                const double defect =
                    qmath::max_abs(m.adjoint() * m -
                                   ComplexMatrix::Identity(dim, dim));
                if (defect > qmath::kHermitianTol) {
                    fail("element_matrix: routing map is not a permutation");
                }
                return m;
            } else {
                return ComplexMatrix::Identity(dim, dim);
            }
        },
        e);
}

std::vector<OpticalElement> circuit_elements(CircuitMode mode) {
    // Reduced model of the stage between preparation and analyzers, on the
    // two labelled paths. The beam displacers appear as their routing action;
    // the wave configuration carries HWP4 at 0 degrees plus the 180-degree
    // phase in path 2, the particle configuration carries HWP4 at 45 degrees
    // and the compensating plates in the output paths.
    if (mode == CircuitMode::WaveMeasurement) {
        return {
            Hwp{22.5, kBothPaths},       // detector-basis rotation
            PhaseShift{180.0, {1}},      // phase in path 2
            mid_swap(),                  // BD: route H across, V straight
            Hwp{0.0, kBothPaths},        // HWP4 at 0 degrees
            Hwp{22.5, kBothPaths},
            mid_swap(),
            path_swap(),                 // BD4 output relabelling
        };
    }
    return {
        Hwp{45.0, kBothPaths},  // HWP4 at 45 degrees
        mid_swap(),
        mid_swap(),
        Hwp{45.0, kBothPaths},  // compensating plates after the last BD
    };
}

ComplexMatrix composite_unitary(CircuitMode mode) {
    ComplexMatrix u = ComplexMatrix::Identity(4, 4);
    for (const OpticalElement& e : circuit_elements(mode)) {
        u = element_matrix(e, 2) * u;
    }
    return u;
}

std::vector<PureState> symmetric_detector_states(Eigen::Index n,
                                                 double overlap) {
    if (n < 2) {
        fail("symmetric_detector_states: need at least 2 states");
    }
    const double nd = static_cast<double>(n);
    if (!(overlap > -1.0 / (nd - 1.0) && overlap <= 1.0)) {
        std::ostringstream os;
        os << "symmetric_detector_states: overlap " << overlap
           << " outside (-1/(N-1), 1]";
        fail(os.str());
    }
    // |d_k> = a |f> + b |g_k> with <g_j|g_k> = -1/(N-1) for j != k and
    // |f> orthogonal to every |g_k>; then <d_j|d_k> = a^2 - b^2/(N-1).
    // The |g_k> live in the hyperplane orthogonal to the uniform vector.
    const double a2 = (1.0 + (nd - 1.0) * overlap) / nd;
    const double b2 = 1.0 - a2;
    const double a = std::sqrt(std::max(a2, 0.0));
    const double b = std::sqrt(std::max(b2, 0.0));
    // Basis-state frame: e_k = |k>, f = uniform superposition,
    // g_k = sqrt(N/(N-1)) (e_k - f/sqrt(N))  (unit, uniform overlap).
    ComplexVector f = ComplexVector::Constant(n, 1.0 / std::sqrt(nd));
    std::vector<PureState> out;
    out.reserve(static_cast<std::size_t>(n));
    const double scale = std::sqrt(nd / (nd - 1.0));
    for (Eigen::Index k = 0; k < n; ++k) {
        ComplexVector g = -f / std::sqrt(nd);
        g(k) += 1.0;
        g *= scale;
        ComplexVector d = a * f + b * g;
        d.normalize();  // absorb rounding
        out.emplace_back(std::move(d));
    }
    return out;
}

PureState joint_state_n(const std::vector<PureState>& detectors) {
    const Eigen::Index n = static_cast<Eigen::Index>(detectors.size());
    if (n < 2) {
        fail("joint_state_n: need at least 2 detector states");
    }
    const Eigen::Index dd = detectors.front().dim();
    ComplexVector psi = ComplexVector::Zero(n * dd);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (detectors[static_cast<std::size_t>(i)].dim() != dd) {
            fail("joint_state_n: detector dimensions differ");
        }
        psi.segment(i * dd, dd) =
            detectors[static_cast<std::size_t>(i)].amplitudes() /
            std::sqrt(static_cast<double>(n));
    }
    return PureState(std::move(psi));
}

DensityMatrix target_state_n(Eigen::Index n, double overlap) {
    const auto detectors = symmetric_detector_states(n, overlap);
    const Eigen::Index dd = detectors.front().dim();
    return qmath::partial_trace(joint_state_n(detectors).projector(), {n, dd},
                                qmath::Subsystem::First);
}

}  // namespace dualitylab::optics
