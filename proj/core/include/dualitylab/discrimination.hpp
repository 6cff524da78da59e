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

/// Minimum-error discrimination of the detector states: the optimal two-state
/// (Helstrom) measurement, the square-root measurement for larger ensembles,
/// success probability, joint outcome/preparation statistics and the mutual
/// information quantifying the particle property.

#pragma once

#include "dualitylab/qmath.hpp"

#include <string>
#include <vector>

namespace dualitylab::discrimination {

using qmath::ComplexMatrix;
using qmath::PureState;

/// Positive operators summing to the identity (PSD floor -1e-10, completeness
/// to 1e-10, both checked on construction).
struct Povm {
    Povm(std::vector<ComplexMatrix> elements, std::vector<std::string> labels);

    std::vector<ComplexMatrix> elements;
    std::vector<std::string> labels;
};

struct HelstromPovm {
    Povm povm;
    /// Set when the weighted difference of the two states vanishes (identical
    /// states with equal priors); the returned pair is then an arbitrary but
    /// fixed projective measurement.
    bool degenerate;
};

struct SquareRootPovm {
    Povm povm;
    /// Set when the ensemble average was singular and its kernel had to be
    /// distributed across the elements.
    bool singular;
};

/// Projective measurement onto the positive/negative eigenspaces of
/// p1 |eta1><eta1| - p2 |eta2><eta2|.
HelstromPovm helstrom_povm(const PureState& eta1, const PureState& eta2,
                           std::pair<double, double> priors);

/// Square-root ("pretty good") measurement for an arbitrary pure-state
/// ensemble: Pi_i = S^{-1/2} p_i rho_i S^{-1/2} with S the ensemble average.
SquareRootPovm pretty_good_povm(const std::vector<PureState>& states,
                                const std::vector<double>& priors);

/// sum_i p_i <eta_i| Pi_i |eta_i>.
double success_probability(const Povm& povm,
                           const std::vector<PureState>& states,
                           const std::vector<double>& priors);

/// p(M = i, D = j) = Tr(Pi_i rho_j) p_j; rows index outcomes, columns index
/// preparations.
Eigen::MatrixXd joint_distribution(const Povm& povm,
                                   const std::vector<PureState>& states,
                                   const std::vector<double>& priors);

/// H(M:D) = H(D) + H(M) - H(p_ij), bits, from the joint table.
double mutual_information(const Eigen::MatrixXd& joint);

/// Full record of one discrimination experiment.
struct DiscriminationResult {
    Povm povm;
    double p_success;
    Eigen::MatrixXd joint;
    double h_d;          // entropy of the preparation marginal, bits
    double h_m;          // entropy of the outcome marginal, bits
    double mutual_info;  // bits
};

DiscriminationResult discriminate(Povm povm,
                                  const std::vector<PureState>& states,
                                  const std::vector<double>& priors);

}  // namespace dualitylab::discrimination
