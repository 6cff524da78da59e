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

/// Coherence quantifiers characterizing the wave property.

#pragma once

#include "dualitylab/qmath.hpp"

namespace dualitylab::coherence {

using qmath::DensityMatrix;

struct CoherenceReport {
    double c_relent;     // relative-entropy coherence, bits
    double c_l1;         // l1 coherence
    double x;            // normalized l1 coherence, c_l1 / n_paths
    Eigen::Index n_paths;
};

/// C(rho) = S(diag(rho)) - S(rho), bits. Computed from eigenvalues.
double relent_coherence(const DensityMatrix& rho);

/// Sum of absolute off-diagonal entries.
double l1_coherence(const DensityMatrix& rho);

/// Both measures plus X = C_l1 / N. Requires rho.dim == n_paths.
CoherenceReport coherence_report(const DensityMatrix& rho,
                                 Eigen::Index n_paths);

}  // namespace dualitylab::coherence
