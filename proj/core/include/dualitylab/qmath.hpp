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

/// Dense complex linear algebra and quantum-information primitives for the
/// small Hilbert spaces used throughout the project (dimension <= ~16).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <utility>

namespace dualitylab::qmath {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical tolerance ledger. All closed-form double arithmetic in this
// project is expected to meet these.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kPsdEigenvalueFloor = -1e-10;
inline constexpr double kReconstructionTol = 1e-10;

/// Largest entry magnitude; 0 for empty matrices.
double max_abs(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// max |M - M^dagger| entry.
double hermiticity_defect(const ComplexMatrix& m);

/// Smallest phase-aligned max-entry difference between two matrices
/// (unitaries compared up to a global phase).
double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b);

class DensityMatrix;

/// Normalized complex state vector.
class PureState {
  public:
    explicit PureState(ComplexVector amplitudes);

    static PureState basis_state(Eigen::Index dim, Eigen::Index k);

    [[nodiscard]] Eigen::Index dim() const { return amps_.size(); }
    [[nodiscard]] const ComplexVector& amplitudes() const { return amps_; }
    [[nodiscard]] Complex amplitude(Eigen::Index i) const { return amps_(i); }

    /// <this|other>
    [[nodiscard]] Complex overlap(const PureState& other) const;

    [[nodiscard]] DensityMatrix projector() const;

  private:
    ComplexVector amps_;
};

/// Trace-one positive-semidefinite Hermitian matrix. The constructor enforces
/// Hermiticity and unit trace to 1e-12 and eigenvalues >= -1e-10.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix maximally_mixed(Eigen::Index dim);

    [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }
    [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
    [[nodiscard]] Complex entry(Eigen::Index i, Eigen::Index j) const {
        return m_(i, j);
    }

  private:
    ComplexMatrix m_;
};

/// Kronecker product; dims multiply, row-major block layout (left factor is
/// the major index).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { First, Second };

/// Reduced state of the kept subsystem of a bipartite state with local
/// dimensions dims = (first, second). Throws if dims do not factor state.dim.
DensityMatrix partial_trace(const DensityMatrix& state,
                            std::pair<Eigen::Index, Eigen::Index> dims,
                            Subsystem keep);

/// Eigenvalues sorted descending; eigenvectors are the matching columns.
struct Eigensystem {
    RealVector values;
    ComplexMatrix vectors;
};

/// Hermitian eigendecomposition, m = V diag(values) V^dagger.
/// Rejects non-Hermitian input.
Eigensystem eigh(const ComplexMatrix& m);
Eigensystem eigh(const DensityMatrix& m);

/// Shannon entropy in bits of a probability-like vector. Entries in
/// [-1e-12, 0) are clamped to zero; 0 log 0 := 0.
double shannon_entropy(std::span<const double> probabilities);

/// S(rho) = -Tr(rho log2 rho), in bits. Eigenvalues are clamped to [0, 1]
/// before evaluation.
double von_neumann_entropy(const DensityMatrix& rho);

/// Uhlmann fidelity F(a, b) = (Tr sqrt(sqrt(a) b sqrt(a)))^2, in [0, 1].
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace dualitylab::qmath
