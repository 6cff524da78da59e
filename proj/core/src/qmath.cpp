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

#include "dualitylab/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dualitylab::qmath {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument(what);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// -p log2 p with 0 log 0 := 0.
double plog2p(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

double hermiticity_defect(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail("phase_aligned_distance: shape mismatch");
    }
    // Align on the largest entry of b; for unitaries this reaches the
    // minimum over global phases to within rounding.
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(b(r, c)) == 0.0) {
        return max_abs(a - b);
    }
    Complex phase = a(r, c) / b(r, c);
    const double mag = std::abs(phase);
    phase = mag > 0 ? phase / mag : Complex{1.0, 0.0};
    return max_abs(a - phase * b);
}

PureState::PureState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) {
        fail("PureState: empty amplitude vector");
    }
    if (!amps_.allFinite()) {
        fail("PureState: non-finite amplitude");
    }
    const double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "PureState: squared norm " << norm2 << " is not 1 within "
           << kNormTol;
        fail(os.str());
    }
}

PureState PureState::basis_state(Eigen::Index dim, Eigen::Index k) {
    if (k < 0 || k >= dim) {
        fail("PureState::basis_state: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(k) = 1.0;
    return PureState(std::move(v));
}

Complex PureState::overlap(const PureState& other) const {
    if (dim() != other.dim()) {
        fail("PureState::overlap: dimension mismatch");
    }
    return amps_.dot(other.amps_);  // Eigen's dot conjugates the left side
}

DensityMatrix PureState::projector() const {
    return DensityMatrix(amps_ * amps_.adjoint());
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        fail("DensityMatrix: matrix must be square and non-empty");
    }
    if (!m_.allFinite()) {
        fail("DensityMatrix: non-finite entry");
    }
    const double herm = hermiticity_defect(m_);
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "DensityMatrix: Hermiticity defect " << herm << " exceeds "
           << kHermitianTol;
        fail(os.str());
    }
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "DensityMatrix: trace " << tr << " is not 1 within " << kTraceTol;
        fail(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_,
                                                        Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < kPsdEigenvalueFloor) {
        std::ostringstream os;
        os << "DensityMatrix: eigenvalue " << min_eig << " below PSD floor "
           << kPsdEigenvalueFloor;
        fail(os.str());
    }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) /
                         static_cast<double>(dim));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.allFinite() || !b.allFinite()) {
        fail("tensor: non-finite operand");
    }
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& state,
                            std::pair<Eigen::Index, Eigen::Index> dims,
                            Subsystem keep) {
    const auto [da, db] = dims;
    if (da <= 0 || db <= 0 || da * db != state.dim()) {
        std::ostringstream os;
        os << "partial_trace: dims (" << da << ", " << db
           << ") do not factor state dimension " << state.dim();
        fail(os.str());
    }
    const ComplexMatrix& m = state.matrix();
    const Eigen::Index dkeep = keep == Subsystem::First ? da : db;
    const Eigen::Index dtrace = keep == Subsystem::First ? db : da;
    ComplexMatrix out = ComplexMatrix::Zero(dkeep, dkeep);
    for (Eigen::Index i = 0; i < dkeep; ++i) {
        for (Eigen::Index j = 0; j < dkeep; ++j) {
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < dtrace; ++t) {
                if (keep == Subsystem::First) {
                    sum += m(i * db + t, j * db + t);
                } else {
                    sum += m(t * db + i, t * db + j);
                }
            }
            out(i, j) = sum;
        }
    }
    return DensityMatrix(std::move(out));
}

Eigensystem eigh(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        fail("eigh: matrix must be square and non-empty");
    }
    const double herm = hermiticity_defect(m);
    if (herm > 1e-10) {
        std::ostringstream os;
        os << "eigh: non-Hermitian input (defect " << herm << ")";
        fail(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigh: eigensolver failed to converge");
    }
    const Eigen::Index n = m.rows();
    Eigensystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    // Eigen sorts ascending; flip to descending.
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = solver.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

Eigensystem eigh(const DensityMatrix& m) { return eigh(m.matrix()); }

double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p < -kTraceTol || p > 1.0 + kTraceTol) {
            std::ostringstream os;
            os << "shannon_entropy: entry " << p
               << " outside [0, 1] beyond tolerance";
            fail(os.str());
        }
        h += plog2p(clamp01(p));
    }
    return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const Eigensystem es = eigh(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        s += plog2p(clamp01(es.values(i)));
    }
    return s;
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        fail("fidelity: dimension mismatch");
    }
    const Eigensystem ea = eigh(a);
    ComplexMatrix sqrt_a = ComplexMatrix::Zero(a.dim(), a.dim());
    for (Eigen::Index i = 0; i < ea.values.size(); ++i) {
        const double lam = std::max(ea.values(i), 0.0);
        sqrt_a += std::sqrt(lam) * ea.vectors.col(i) *
                  ea.vectors.col(i).adjoint();
    }
    const ComplexMatrix inner = sqrt_a * b.matrix() * sqrt_a;
    // inner is Hermitian PSD up to rounding; symmetrize before eigh.
    const Eigensystem ei = eigh(ComplexMatrix((inner + inner.adjoint()) / 2.0));
    double root_sum = 0.0;
    for (Eigen::Index i = 0; i < ei.values.size(); ++i) {
        root_sum += std::sqrt(std::max(ei.values(i), 0.0));
    }
    return clamp01(root_sum * root_sum);
}

}  // namespace dualitylab::qmath
