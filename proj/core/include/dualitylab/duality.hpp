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

/// Full sweeps over the detector angle: wave and particle quantifiers from
/// the model pipelines (ideal) and from simulated noisy measurements, plus
/// the three duality-relation checks.

#pragma once

#include "dualitylab/config.hpp"
#include "dualitylab/tomo.hpp"

#include <optional>
#include <vector>

namespace dualitylab::duality {

/// Ideal (noise-free) quantifiers at one angle. v and d are only defined for
/// two paths and are NaN otherwise.
struct QuantifierSet {
    double c;   // relative-entropy coherence, bits
    double h;   // mutual information H(M:D), bits
    double x;   // normalized l1 coherence
    double ps;  // discrimination success probability
    double p;   // ps - 1/N
    double v;   // visibility 2|rho_12|
    double d;   // distinguishability 2(ps - 1/2)
};

/// Bootstrap estimates for the same quantifiers.
struct SimulatedQuantifiers {
    tomo::McEstimate c, h, x, ps, p, v, d;
};

struct SweepBounds {
    double entropic_bound;   // H({p_i}) = log2 N bits
    double quadratic_bound;  // (1 - 1/N)^2
};

struct SweepRecord {
    double theta_deg;
    int n_paths;
    QuantifierSet ideal;
    std::optional<SimulatedQuantifiers> simulated;
    SweepBounds bounds;
};

enum class Relation { GreenbergerYasin, Entropic, Quadratic };

/// Which side of a record a verdict judges: Auto picks the simulated values
/// when present.
enum class VerdictSource { Auto, Ideal, Simulated };

struct DualityVerdict {
    Relation relation;
    double lhs;
    double bound;
    bool satisfied;  // lhs <= bound + tolerance (1e-9 ideal, 3 sigma simulated)
    double slack;    // bound - lhs
};

/// Uniform grid from start to end inclusive; steps == 1 pins it to start.
std::vector<double> theta_grid(double start_deg, double end_deg, int steps);

/// One angle evaluated through the optics/coherence/discrimination modules
/// (minimum-error measurement for two paths, square-root measurement for
/// more).
SweepRecord ideal_record(double theta_deg, int n_paths = 2);

std::vector<SweepRecord> ideal_sweep(const std::vector<double>& thetas_deg,
                                     int n_paths = 2);

/// (ps - 1/N)^2 + X^2 <= (1 - 1/N)^2; an equality for the ideal two-path
/// family.
DualityVerdict verify_quadratic(const SweepRecord& record,
                                VerdictSource source = VerdictSource::Auto);

/// C + H(M:D) <= H({p_i}).
DualityVerdict verify_entropic(const SweepRecord& record,
                               VerdictSource source = VerdictSource::Auto);

/// V^2 + D^2 <= 1 (two paths only).
DualityVerdict verify_gy(const SweepRecord& record,
                         VerdictSource source = VerdictSource::Auto);

/// Sweep with simulated measurements at the configured statistics. For two
/// paths the wave side runs the interference circuit and two-branch
/// tomography; the particle side counts the optimal-measurement outcomes per
/// path. Every quantifier carries a parametric-bootstrap error bar.
std::vector<SweepRecord> simulated_sweep(const ExperimentConfig& config);

/// The wave-side count records the simulated sweep draws at one grid point
/// (two paths only). Rerunning with the same config reproduces them exactly.
std::vector<tomo::CountRecord> simulated_wave_records(
    const ExperimentConfig& config, std::size_t theta_index);

}  // namespace dualitylab::duality
