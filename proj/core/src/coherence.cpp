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

#include "dualitylab/coherence.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dualitylab::coherence {

double relent_coherence(const DensityMatrix& rho) {
    std::vector<double> diag(static_cast<std::size_t>(rho.dim()));
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        diag[static_cast<std::size_t>(i)] = rho.entry(i, i).real();
    }
    const double c =
        qmath::shannon_entropy(diag) - qmath::von_neumann_entropy(rho);
    return std::max(c, 0.0);  // absorb rounding on incoherent states
}

double l1_coherence(const DensityMatrix& rho) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        for (Eigen::Index j = 0; j < rho.dim(); ++j) {
            if (i != j) {
                sum += std::abs(rho.entry(i, j));
            }
        }
    }
    return sum;
}

CoherenceReport coherence_report(const DensityMatrix& rho,
                                 Eigen::Index n_paths) {
    if (rho.dim() != n_paths) {
        throw std::invalid_argument(
            "coherence_report: state dimension does not match n_paths");
    }
    const double l1 = l1_coherence(rho);
    return CoherenceReport{relent_coherence(rho), l1,
                           l1 / static_cast<double>(n_paths), n_paths};
}

}  // namespace dualitylab::coherence
