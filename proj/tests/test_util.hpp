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

#pragma once

#include "dualitylab/qmath.hpp"
#include "dualitylab/rng.hpp"

#include <cmath>
#include <numbers>

namespace dualitylab::test {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;

/// Independent scalar oracle: binary entropy in bits.
inline double binary_entropy(double p) {
    auto t = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
    return -(t(p) + t(1.0 - p));
}

inline qmath::Complex random_complex(rng::Substream& s) {
    return {2.0 * s.next_double() - 1.0, 2.0 * s.next_double() - 1.0};
}

inline qmath::ComplexMatrix random_matrix(Eigen::Index dim,
                                          rng::Substream& s) {
    qmath::ComplexMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(i, j) = random_complex(s);
        }
    }
    return m;
}

inline qmath::ComplexMatrix random_hermitian(Eigen::Index dim,
                                             rng::Substream& s) {
    const qmath::ComplexMatrix m = random_matrix(dim, s);
    return (m + m.adjoint()) / 2.0;
}

/// Haar-ish random unitary via QR of a complex Gaussian-like matrix.
inline qmath::ComplexMatrix random_unitary(Eigen::Index dim,
                                           rng::Substream& s) {
    const qmath::ComplexMatrix m = random_matrix(dim, s);
    Eigen::HouseholderQR<qmath::ComplexMatrix> qr(m);
    return qr.householderQ() * qmath::ComplexMatrix::Identity(dim, dim);
}

inline qmath::DensityMatrix random_density(Eigen::Index dim,
                                           rng::Substream& s) {
    const qmath::ComplexMatrix m = random_matrix(dim, s);
    qmath::ComplexMatrix rho = m * m.adjoint();
    rho /= rho.trace().real();
    return qmath::DensityMatrix((rho + rho.adjoint()) / 2.0);
}

inline qmath::PureState random_pure(Eigen::Index dim, rng::Substream& s) {
    qmath::ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = random_complex(s);
    }
    v.normalize();
    return qmath::PureState(std::move(v));
}

}  // namespace dualitylab::test
