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

#include "dualitylab/discrimination.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dualitylab::discrimination {

namespace {

using qmath::Complex;
using qmath::ComplexVector;

constexpr double kCompletenessTol = 1e-10;
constexpr double kDegenerateTol = 1e-12;

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument(what);
}

void check_priors(const std::vector<double>& priors) {
    double sum = 0.0;
    for (double p : priors) {
        if (!(p >= 0.0)) {
            fail("priors must be non-negative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > qmath::kTraceTol) {
        std::ostringstream os;
        os << "priors sum to " << sum << ", expected 1";
        fail(os.str());
    }
}

void check_ensemble(const std::vector<PureState>& states,
                    const std::vector<double>& priors) {
    if (states.size() < 2) {
        fail("need at least 2 states to discriminate");
    }
    if (states.size() != priors.size()) {
        fail("states and priors differ in length");
    }
    for (const PureState& s : states) {
        if (s.dim() != states.front().dim()) {
            fail("states differ in dimension");
        }
    }
    check_priors(priors);
}

std::vector<std::string> outcome_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = "M" + std::to_string(i + 1);
    }
    return labels;
}

/// Fixed fallback pair for the degenerate Helstrom case: projector onto
/// (e0 + e1)/sqrt(2) and its complement.
std::pair<ComplexMatrix, ComplexMatrix> plus_minus_pair(Eigen::Index dim) {
    ComplexVector plus = ComplexVector::Zero(dim);
    plus(0) = 1.0 / std::numbers::sqrt2;
    plus(1) = 1.0 / std::numbers::sqrt2;
    ComplexMatrix p1 = plus * plus.adjoint();
    ComplexMatrix p2 = ComplexMatrix::Identity(dim, dim) - p1;
    return {std::move(p1), std::move(p2)};
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> elements_in,
           std::vector<std::string> labels_in)
    : elements(std::move(elements_in)), labels(std::move(labels_in)) {
    if (elements.empty()) {
        fail("Povm: no elements");
    }
    if (labels.size() != elements.size()) {
        fail("Povm: labels and elements differ in length");
    }
    const Eigen::Index dim = elements.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const ComplexMatrix& e : elements) {
        if (e.rows() != dim || e.cols() != dim) {
            fail("Povm: element dimensions differ");
        }
        if (qmath::hermiticity_defect(e) > 1e-10) {
            fail("Povm: element is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
            e, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < qmath::kPsdEigenvalueFloor) {
            fail("Povm: element is not positive semidefinite");
        }
        sum += e;
    }
    if (qmath::max_abs(sum - ComplexMatrix::Identity(dim, dim)) >
        kCompletenessTol) {
        fail("Povm: elements do not sum to the identity");
    }
}

HelstromPovm helstrom_povm(const PureState& eta1, const PureState& eta2,
                           std::pair<double, double> priors) {
    if (eta1.dim() != eta2.dim()) {
        fail("helstrom_povm: state dimensions differ");
    }
    check_priors({priors.first, priors.second});
    const Eigen::Index dim = eta1.dim();
    const ComplexMatrix gamma =
        priors.first * eta1.amplitudes() * eta1.amplitudes().adjoint() -
        priors.second * eta2.amplitudes() * eta2.amplitudes().adjoint();
    const qmath::Eigensystem es = qmath::eigh(gamma);
    if (es.values.cwiseAbs().maxCoeff() <= kDegenerateTol) {
        auto [p1, p2] = plus_minus_pair(dim);
        return HelstromPovm{Povm({std::move(p1), std::move(p2)},
                                 outcome_labels(2)),
                            true};
    }
    ComplexMatrix pi1 = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        if (es.values(i) > 0.0) {
            pi1 += es.vectors.col(i) * es.vectors.col(i).adjoint();
        }
    }
    ComplexMatrix pi2 = ComplexMatrix::Identity(dim, dim) - pi1;
    return HelstromPovm{
        Povm({std::move(pi1), std::move(pi2)}, outcome_labels(2)), false};
}

SquareRootPovm pretty_good_povm(const std::vector<PureState>& states,
                                const std::vector<double>& priors) {
    check_ensemble(states, priors);
    const Eigen::Index dim = states.front().dim();
    const std::size_t n = states.size();
    ComplexMatrix avg = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        avg += priors[i] * states[i].amplitudes() *
               states[i].amplitudes().adjoint();
    }
    const qmath::Eigensystem es = qmath::eigh(avg);
    const double lambda_max = es.values(0);
    const double rank_cut = std::max(lambda_max, 1.0) * 1e-12;
    ComplexMatrix inv_sqrt = ComplexMatrix::Zero(dim, dim);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        if (es.values(i) > rank_cut) {
            inv_sqrt += (1.0 / std::sqrt(es.values(i))) * es.vectors.col(i) *
                        es.vectors.col(i).adjoint();
            ++rank;
        }
    }
    const bool singular = rank < dim;
    std::vector<ComplexMatrix> elements;
    elements.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ComplexVector v =
            inv_sqrt * states[i].amplitudes() * std::sqrt(priors[i]);
        elements.push_back(v * v.adjoint());
    }
    if (singular) {
        // Split the kernel projector evenly so the elements stay complete.
        ComplexMatrix support = ComplexMatrix::Zero(dim, dim);
        for (const ComplexMatrix& e : elements) {
            support += e;
        }
        const ComplexMatrix kernel =
            ComplexMatrix::Identity(dim, dim) - support;
        for (ComplexMatrix& e : elements) {
            e += kernel / static_cast<double>(n);
        }
    }
    return SquareRootPovm{Povm(std::move(elements), outcome_labels(n)),
                          singular};
}

double success_probability(const Povm& povm,
                           const std::vector<PureState>& states,
                           const std::vector<double>& priors) {
    check_ensemble(states, priors);
    if (povm.elements.size() != states.size()) {
        fail("success_probability: outcome and state counts differ");
    }
    if (povm.elements.front().rows() != states.front().dim()) {
        fail("success_probability: dimension mismatch");
    }
    double ps = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const ComplexVector& amps = states[i].amplitudes();
        ps += priors[i] * (amps.adjoint() * povm.elements[i] * amps)(0).real();
    }
    return std::clamp(ps, 0.0, 1.0);
}

Eigen::MatrixXd joint_distribution(const Povm& povm,
                                   const std::vector<PureState>& states,
                                   const std::vector<double>& priors) {
    check_ensemble(states, priors);
    if (povm.elements.front().rows() != states.front().dim()) {
        fail("joint_distribution: dimension mismatch");
    }
    const auto n_out = static_cast<Eigen::Index>(povm.elements.size());
    const auto n_prep = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXd joint(n_out, n_prep);
    for (Eigen::Index i = 0; i < n_out; ++i) {
        for (Eigen::Index j = 0; j < n_prep; ++j) {
            const ComplexVector& amps =
                states[static_cast<std::size_t>(j)].amplitudes();
            double p =
                (amps.adjoint() * povm.elements[static_cast<std::size_t>(i)] *
                 amps)(0)
                    .real() *
                priors[static_cast<std::size_t>(j)];
            if (p < 0.0 && p >= -qmath::kTraceTol) {
                p = 0.0;  // rounding from matrix traces
            }
            joint(i, j) = p;
        }
    }
    return joint;
}

double mutual_information(const Eigen::MatrixXd& joint) {
    if (joint.size() == 0) {
        fail("mutual_information: empty table");
    }
    double total = 0.0;
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(joint.size()));
    std::vector<double> row_marginal(static_cast<std::size_t>(joint.rows()),
                                     0.0);
    std::vector<double> col_marginal(static_cast<std::size_t>(joint.cols()),
                                     0.0);
    for (Eigen::Index i = 0; i < joint.rows(); ++i) {
        for (Eigen::Index j = 0; j < joint.cols(); ++j) {
            double p = joint(i, j);
            if (p < -qmath::kTraceTol) {
                fail("mutual_information: negative table entry");
            }
            p = std::max(p, 0.0);
            flat.push_back(p);
            row_marginal[static_cast<std::size_t>(i)] += p;
            col_marginal[static_cast<std::size_t>(j)] += p;
            total += p;
        }
    }
    if (std::abs(total - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "mutual_information: table sums to " << total << ", expected 1";
        fail(os.str());
    }
    const double mi = qmath::shannon_entropy(row_marginal) +
                      qmath::shannon_entropy(col_marginal) -
                      qmath::shannon_entropy(flat);
    return std::max(mi, 0.0);
}

DiscriminationResult discriminate(Povm povm,
                                  const std::vector<PureState>& states,
                                  const std::vector<double>& priors) {
    const double ps = success_probability(povm, states, priors);
    Eigen::MatrixXd joint = joint_distribution(povm, states, priors);
    std::vector<double> row_marginal(static_cast<std::size_t>(joint.rows()),
                                     0.0);
    std::vector<double> col_marginal(static_cast<std::size_t>(joint.cols()),
                                     0.0);
    for (Eigen::Index i = 0; i < joint.rows(); ++i) {
        for (Eigen::Index j = 0; j < joint.cols(); ++j) {
            row_marginal[static_cast<std::size_t>(i)] += joint(i, j);
            col_marginal[static_cast<std::size_t>(j)] += joint(i, j);
        }
    }
    const double mi = mutual_information(joint);
    return DiscriminationResult{std::move(povm),
                                ps,
                                std::move(joint),
                                qmath::shannon_entropy(col_marginal),
                                qmath::shannon_entropy(row_marginal),
                                mi};
}

}  // namespace dualitylab::discrimination
