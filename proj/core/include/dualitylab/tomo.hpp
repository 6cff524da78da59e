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

/// Photon-counting simulation with Poisson shot noise, iterative
/// maximum-likelihood state reconstruction, the two-branch target-state
/// reconstruction, and parametric-bootstrap (Monte Carlo) error bars.

#pragma once

#include "dualitylab/qmath.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dualitylab::tomo {

using qmath::ComplexMatrix;
using qmath::DensityMatrix;

/// One measurement setting and its observed photon count.
struct CountRecord {
    std::string setting_label;
    int branch = 0;
    ComplexMatrix projector;
    std::uint64_t counts = 0;
    double exposure_s = 0.0;
};

struct TomoOptions {
    int max_iterations = 10000;
    double tol = 1e-10;          // max-entry change
    bool record_trace = false;   // keep per-iteration log-likelihoods
};

struct TomoResult {
    DensityMatrix rho_hat;
    double log_likelihood;
    int iterations;
    bool converged;
    std::vector<double> likelihood_trace;  // filled when record_trace is set
};

struct McEstimate {
    double mean;
    double std_dev;
    int samples;
};

/// Six polarization projectors: Z+/Z- (H/V), X+/X- (diagonal/antidiagonal),
/// Y+/Y- (circular).
std::vector<ComplexMatrix> pauli_projectors();
std::vector<std::string> pauli_labels();

/// Informationally complete projector set for an arbitrary dimension: the
/// basis projectors plus the four pairwise-superposition projectors per
/// index pair. dim == 2 reduces to the Pauli set above.
std::vector<ComplexMatrix> ic_projectors(Eigen::Index dim);
std::vector<std::string> ic_labels(Eigen::Index dim);

/// Polarization projector for one of the six Pauli labels; throws on an
/// unknown label.
ComplexMatrix projector_from_label(const std::string& label);

/// Poisson counts with mean flux * exposure * Tr(Pi state), one record per
/// projector. Setting j draws from substream (seed, j, 0); fixed seeds are
/// bit-reproducible regardless of evaluation order.
std::vector<CountRecord> simulate_counts(
    const DensityMatrix& state, const std::vector<ComplexMatrix>& projectors,
    const std::vector<std::string>& labels, double flux, double exposure_s,
    std::uint64_t seed, int branch = 0);

std::vector<CountRecord> simulate_counts(
    const DensityMatrix& state, const std::vector<ComplexMatrix>& projectors,
    double flux, double exposure_s, std::uint64_t seed);

/// Simulated two-branch polarization tomography of a 2-path (x) 2-pol output
/// state: for each output path, the six Pauli settings, rates weighted by
/// the branch population. Records carry the 2x2 polarization projectors.
std::vector<CountRecord> simulate_two_branch_records(
    const DensityMatrix& joint_out, double flux, double exposure_s,
    std::uint64_t seed);

/// Iterative maximum-likelihood reconstruction (RrhoR fixed point with a
/// diluted-step fallback). The result is always a physical state. Throws if
/// the projector set is informationally incomplete or every count is zero.
TomoResult mle_reconstruct(const std::vector<CountRecord>& records,
                           const TomoOptions& options = {});

struct TwoBranchResult {
    DensityMatrix rho;               // reconstructed target (path) state
    std::array<double, 2> weights;   // relative total-count weights
    std::array<bool, 2> branch_empty;
    std::array<std::optional<TomoResult>, 2> branches;
};

/// Target-state reconstruction from per-branch polarization tomograms:
/// rho = w1 M(rho1) + w2 M(rho2), where M reads each branch's polarization
/// basis back as the path provenance the wave circuit routed into it
/// (H -> path 1, V -> path 2). A branch with zero total counts contributes
/// nothing and is flagged.
TwoBranchResult weighted_two_branch_reconstruct(
    const std::vector<CountRecord>& branch1,
    const std::vector<CountRecord>& branch2, const TomoOptions& options = {});

/// Parametric bootstrap: resample every count Poisson with mean equal to the
/// observed count (record j, sample i uses substream (seed, j, i)), re-run
/// the pipeline, and report mean and standard deviation of the samples.
McEstimate monte_carlo_error(
    const std::function<double(const std::vector<CountRecord>&)>& pipeline,
    const std::vector<CountRecord>& records, int n_samples,
    std::uint64_t seed);

/// Same resampling, one pass for a pipeline producing several quantities.
std::vector<McEstimate> monte_carlo_errors(
    const std::function<std::vector<double>(const std::vector<CountRecord>&)>&
        pipeline,
    const std::vector<CountRecord>& records, int n_samples,
    std::uint64_t seed);

/// CSV serialization (columns: setting_label, branch, counts, exposure_s).
std::string records_to_csv(const std::vector<CountRecord>& records);

/// Parse records back; projectors are rebuilt from the setting labels.
/// Throws std::runtime_error naming the offending line on malformed input.
std::vector<CountRecord> records_from_csv(std::istream& in);

}  // namespace dualitylab::tomo
