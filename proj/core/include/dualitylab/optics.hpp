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

/// Optical model of the two-path which-way interferometer: detector-state
/// preparation on the polarization qubit, the path (x) polarization product
/// space, Jones-calculus elements, and the composite measurement-stage
/// unitary for the wave and particle configurations.
///
/// Basis ordering is fixed globally as path-major, polarization-minor:
/// (1,H), (1,V), (2,H), (2,V). Flat index = 2 * path + pol with pol H = 0,
/// V = 1.

#pragma once

#include "dualitylab/qmath.hpp"

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace dualitylab::optics {

using qmath::ComplexMatrix;
using qmath::DensityMatrix;
using qmath::PureState;

/// Detector-state angle in degrees, valid on [0, 90].
class DetectorAngle {
  public:
    explicit DetectorAngle(double degrees);

    [[nodiscard]] double degrees() const { return degrees_; }
    [[nodiscard]] double radians() const;

  private:
    double degrees_;
};

/// Half-wave plate at fast-axis angle `angle_deg`, acting on the listed
/// paths: [[cos 2a, sin 2a], [sin 2a, -cos 2a]].
struct Hwp {
    double angle_deg;
    std::vector<Eigen::Index> paths;
};

/// Quarter-wave plate at fast-axis angle `angle_deg`, acting on the listed
/// paths.
struct Qwp {
    double angle_deg;
    std::vector<Eigen::Index> paths;
};

/// e^{i phase} on both polarizations of the listed paths.
struct PhaseShift {
    double phase_deg;
    std::vector<Eigen::Index> paths;
};

/// Abstract beam-displacer routing: a permutation of (path, pol) modes,
/// given as (from, to) flat-index pairs; unlisted modes stay put.
struct BeamDisplacer {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> routing;
};

struct Identity {};

using OpticalElement =
    std::variant<Hwp, Qwp, PhaseShift, BeamDisplacer, Identity>;

/// Wave configuration: HWP4 at 0 degrees and the 180-degree phase in path 2;
/// the state interferes and the target is read out in polarization.
/// Particle configuration: HWP4 at 45 degrees, no phase; the stage reduces
/// to the identity and the detector states are probed directly.
enum class CircuitMode { WaveMeasurement, ParticleMeasurement };

/// |eta1> = cos(theta)|H> + sin(theta)|V>,
/// |eta2> = cos(theta)|H> - sin(theta)|V>.
std::pair<PureState, PureState> detector_states(DetectorAngle theta);

/// (1/sqrt(2)) (|1>|eta1> + |2>|eta2>), dim 4.
PureState joint_state(DetectorAngle theta);

/// Path qubit after tracing out the detector: diagonal 1/2, off-diagonal
/// cos(2 theta)/2.
DensityMatrix target_state(DetectorAngle theta);

/// Unitary matrix of one element on the full path (x) polarization space.
ComplexMatrix element_matrix(const OpticalElement& e, Eigen::Index n_paths);

/// Element sequence modelling the measurement stage between the preparation
/// and the analyzers, in application order. Beam displacers are reduced to
/// their routing action on the two labelled paths; the intermediate
/// ancillary paths of the physical layout are not materialized.
std::vector<OpticalElement> circuit_elements(CircuitMode mode);

/// Product of the mode's element matrices. Equals (sigma_x H) (x) H for the
/// wave configuration and the 4x4 identity for the particle configuration.
ComplexMatrix composite_unitary(CircuitMode mode);

/// N symmetric detector states with uniform real pairwise overlap, in an
/// N-dimensional detector space. overlap must lie in (-1/(N-1), 1].
std::vector<PureState> symmetric_detector_states(Eigen::Index n,
                                                 double overlap);

/// (1/sqrt(N)) sum_i |i>|d_i>, path-major ordering.
PureState joint_state_n(const std::vector<PureState>& detectors);

/// N-path target state: diagonal 1/N, off-diagonal overlap/N.
DensityMatrix target_state_n(Eigen::Index n, double overlap);

}  // namespace dualitylab::optics
