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

#include "dualitylab/tomo.hpp"

#include "dualitylab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dualitylab::tomo {

namespace {

using qmath::Complex;
using qmath::ComplexVector;

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument(what);
}

ComplexMatrix vector_projector(std::initializer_list<Complex> amps) {
    ComplexVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (Complex a : amps) {
        v(i++) = a;
    }
    return v * v.adjoint();
}

double projector_rate(const ComplexMatrix& projector,
                      const ComplexMatrix& rho) {
    return std::max((projector * rho).trace().real(), 0.0);
}

/// Hermitian matrices as real vectors of length dim^2, for the completeness
/// rank test.
Eigen::VectorXd hermitian_coordinates(const ComplexMatrix& m) {
    const Eigen::Index d = m.rows();
    Eigen::VectorXd v(d * d);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        v(k++) = m(i, i).real();
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            v(k++) = m(i, j).real();
            v(k++) = m(i, j).imag();
        }
    }
    return v;
}

/// Project onto the physical set: Hermitize, clamp tiny negative
/// eigenvalues, renormalize the trace.
DensityMatrix make_physical(const ComplexMatrix& m) {
    const ComplexMatrix herm = (m + m.adjoint()) / 2.0;
    const qmath::Eigensystem es = qmath::eigh(herm);
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    double total = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        const double lam = std::max(es.values(i), 0.0);
        total += lam;
        out += lam * es.vectors.col(i) * es.vectors.col(i).adjoint();
    }
    if (total <= 0.0) {
        throw std::runtime_error("make_physical: zero spectrum");
    }
    return DensityMatrix(out / total);
}

double log_likelihood(const std::vector<CountRecord>& records,
                      const ComplexMatrix& rho) {
    // Setting probabilities normalized by Tr(G rho), G = sum of projectors;
    // scale-invariant so completeness factors of the setting list drop out.
    double norm = 0.0;
    for (const CountRecord& r : records) {
        norm += projector_rate(r.projector, rho);
    }
    double ll = 0.0;
    for (const CountRecord& r : records) {
        if (r.counts == 0) {
            continue;
        }
        const double p =
            std::max(projector_rate(r.projector, rho) / norm, 1e-300);
        ll += static_cast<double>(r.counts) * std::log(p);
    }
    return ll;
}

}  // namespace

std::vector<ComplexMatrix> pauli_projectors() {
    const double s = 1.0 / std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    return {
        vector_projector({1.0, 0.0}),      // Z+ : H
        vector_projector({0.0, 1.0}),      // Z- : V
        vector_projector({s, s}),          // X+ : diagonal
        vector_projector({s, -s}),         // X- : antidiagonal
        vector_projector({s, i * s}),      // Y+
        vector_projector({s, -i * s}),     // Y-
    };
}

std::vector<std::string> pauli_labels() {
    return {"Z+", "Z-", "X+", "X-", "Y+", "Y-"};
}

ComplexMatrix projector_from_label(const std::string& label) {
    const auto labels = pauli_labels();
    const auto projectors = pauli_projectors();
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (labels[k] == label) {
            return projectors[k];
        }
    }
    throw std::invalid_argument("unknown setting label: " + label);
}

std::vector<ComplexMatrix> ic_projectors(Eigen::Index dim) {
    if (dim == 2) {
        return pauli_projectors();
    }
    if (dim < 2) {
        fail("ic_projectors: dimension must be >= 2");
    }
    std::vector<ComplexMatrix> out;
    const double s = 1.0 / std::numbers::sqrt2;
    const Complex im{0.0, 1.0};
    for (Eigen::Index k = 0; k < dim; ++k) {
        ComplexVector v = ComplexVector::Zero(dim);
        v(k) = 1.0;
        out.push_back(v * v.adjoint());
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = j + 1; k < dim; ++k) {
            for (Complex w : {Complex{1.0, 0.0}, Complex{-1.0, 0.0}, im, -im}) {
                ComplexVector v = ComplexVector::Zero(dim);
                v(j) = s;
                v(k) = s * w;
                out.push_back(v * v.adjoint());
            }
        }
    }
    return out;
}

std::vector<std::string> ic_labels(Eigen::Index dim) {
    if (dim == 2) {
        return pauli_labels();
    }
    std::vector<std::string> out;
    for (Eigen::Index k = 0; k < dim; ++k) {
        out.push_back("B" + std::to_string(k));
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = j + 1; k < dim; ++k) {
            const std::string jk =
                std::to_string(j) + "." + std::to_string(k);
            out.push_back("S" + jk + "+");
            out.push_back("S" + jk + "-");
            out.push_back("C" + jk + "+");
            out.push_back("C" + jk + "-");
        }
    }
    return out;
}

std::vector<CountRecord> simulate_counts(
    const DensityMatrix& state, const std::vector<ComplexMatrix>& projectors,
    const std::vector<std::string>& labels, double flux, double exposure_s,
    std::uint64_t seed, int branch) {
    if (projectors.empty()) {
        fail("simulate_counts: no projectors");
    }
    if (labels.size() != projectors.size()) {
        fail("simulate_counts: labels and projectors differ in length");
    }
    if (!(flux > 0.0) || !(exposure_s > 0.0)) {
        fail("simulate_counts: flux and exposure must be positive");
    }
    for (const ComplexMatrix& p : projectors) {
        if (p.rows() != state.dim() || p.cols() != state.dim()) {
            fail("simulate_counts: projector dimension mismatch");
        }
        const qmath::Eigensystem es = qmath::eigh(p);
        if (es.values.minCoeff() < qmath::kPsdEigenvalueFloor ||
            es.values.maxCoeff() > 1.0 + 1e-10) {
            fail("simulate_counts: projector spectrum outside [0, 1]");
        }
    }
    std::vector<CountRecord> records;
    records.reserve(projectors.size());
    for (std::size_t j = 0; j < projectors.size(); ++j) {
        const double rate =
            flux * exposure_s * projector_rate(projectors[j], state.matrix());
        rng::Substream stream(seed, j, 0);
        records.push_back(CountRecord{labels[j], branch, projectors[j],
                                      stream.poisson(rate), exposure_s});
    }
    return records;
}

std::vector<CountRecord> simulate_counts(
    const DensityMatrix& state, const std::vector<ComplexMatrix>& projectors,
    double flux, double exposure_s, std::uint64_t seed) {
    std::vector<std::string> labels(projectors.size());
    for (std::size_t j = 0; j < projectors.size(); ++j) {
        labels[j] = "P" + std::to_string(j);
    }
    return simulate_counts(state, projectors, labels, flux, exposure_s, seed);
}

std::vector<CountRecord> simulate_two_branch_records(
    const DensityMatrix& joint_out, double flux, double exposure_s,
    std::uint64_t seed) {
    if (joint_out.dim() != 4) {
        fail("simulate_two_branch_records: expected a 2-path x 2-pol state");
    }
    const auto pol = pauli_projectors();
    const auto labels = pauli_labels();
    std::vector<ComplexMatrix> full;
    std::vector<std::string> full_labels;
    for (int b = 0; b < 2; ++b) {
        ComplexMatrix path_proj = ComplexMatrix::Zero(2, 2);
        path_proj(b, b) = 1.0;
        for (std::size_t k = 0; k < pol.size(); ++k) {
            full.push_back(qmath::tensor(path_proj, pol[k]));
            full_labels.push_back(labels[k]);
        }
    }
    std::vector<CountRecord> records =
        simulate_counts(joint_out, full, full_labels, flux, exposure_s, seed);
    // Repackage with the 2x2 polarization projectors and a branch tag.
    for (std::size_t j = 0; j < records.size(); ++j) {
        records[j].branch = j < pol.size() ? 1 : 2;
        records[j].projector = pol[j % pol.size()];
    }
    return records;
}

TomoResult mle_reconstruct(const std::vector<CountRecord>& records,
                           const TomoOptions& options) {
    if (records.empty()) {
        fail("mle_reconstruct: no records");
    }
    const Eigen::Index dim = records.front().projector.rows();
    std::uint64_t total = 0;
    Eigen::MatrixXd design(dim * dim,
                           static_cast<Eigen::Index>(records.size()));
    for (std::size_t k = 0; k < records.size(); ++k) {
        const CountRecord& r = records[k];
        if (r.projector.rows() != dim || r.projector.cols() != dim) {
            fail("mle_reconstruct: projector dimensions differ");
        }
        if (!(r.exposure_s > 0.0)) {
            fail("mle_reconstruct: exposure must be positive");
        }
        design.col(static_cast<Eigen::Index>(k)) =
            hermitian_coordinates(r.projector);
        total += r.counts;
    }
    const auto rank =
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(design).rank();
    if (rank < dim * dim) {
        std::ostringstream os;
        os << "mle_reconstruct: projector set is informationally incomplete "
              "(operator rank "
           << rank << " of " << dim * dim << ")";
        fail(os.str());
    }
    if (total == 0) {
        fail("mle_reconstruct: every count is zero");
    }

    const double total_d = static_cast<double>(total);
    ComplexMatrix rho =
        ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
    double ll = log_likelihood(records, rho);
    TomoResult result{DensityMatrix::maximally_mixed(dim), ll, 0, false, {}};
    if (options.record_trace) {
        result.likelihood_trace.push_back(ll);
    }

    // sum of projectors; the diluted operator needs G^{-1/2} scaling when
    // the setting list is not uniformly weighted.
    ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
    for (const CountRecord& r : records) {
        g += r.projector;
    }
    const qmath::Eigensystem ge = qmath::eigh(g);
    if (ge.values.minCoeff() <= 0.0) {
        fail("mle_reconstruct: setting operators do not span the space");
    }
    ComplexMatrix g_inv_sqrt = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < ge.values.size(); ++i) {
        g_inv_sqrt += (1.0 / std::sqrt(ge.values(i))) * ge.vectors.col(i) *
                      ge.vectors.col(i).adjoint();
    }

    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        // R = sum_k (f_k / p_k) Pi_k at the current state.
        double norm = 0.0;
        std::vector<double> probs(records.size());
        for (std::size_t k = 0; k < records.size(); ++k) {
            probs[k] = projector_rate(records[k].projector, rho);
            norm += probs[k];
        }
        ComplexMatrix r_op = ComplexMatrix::Zero(dim, dim);
        for (std::size_t k = 0; k < records.size(); ++k) {
            if (records[k].counts == 0) {
                continue;
            }
            const double f = static_cast<double>(records[k].counts) / total_d;
            const double p = std::max(probs[k] / norm, 1e-300);
            r_op += (f / p) * records[k].projector;
        }
        // With normalized probabilities the fixed point satisfies
        // G^{-1/2} R G^{-1/2} = I, which keeps the diluted mix well scaled.
        r_op = g_inv_sqrt * r_op * g_inv_sqrt;

        auto step = [&](double eps) {
            const ComplexMatrix mix =
                eps >= 1.0
                    ? r_op
                    : ComplexMatrix(ComplexMatrix::Identity(dim, dim) *
                                        (1.0 - eps) +
                                    eps * r_op);
            ComplexMatrix next = mix * rho * mix.adjoint();
            next = (next + next.adjoint()) / 2.0;
            const double tr = next.trace().real();
            if (!(tr > 0.0)) {
                throw std::runtime_error("mle_reconstruct: degenerate step");
            }
            return ComplexMatrix(next / tr);
        };

        ComplexMatrix next = step(1.0);
        double next_ll = log_likelihood(records, next);
        // Diluted fallback when the full fixed-point step loses likelihood.
        double eps = 0.5;
        while (next_ll < ll - 1e-12 && eps > 1e-8) {
            next = step(eps);
            next_ll = log_likelihood(records, next);
            eps /= 2.0;
        }
        if (next_ll < ll - 1e-12) {
            break;  // stalled; keep the current iterate
        }
        const double change = qmath::max_abs(next - rho);
        rho = std::move(next);
        ll = next_ll;
        if (options.record_trace) {
            result.likelihood_trace.push_back(ll);
        }
        if (change < options.tol) {
            result.converged = true;
            ++iter;
            break;
        }
    }
    result.iterations = iter;
    result.log_likelihood = ll;
    result.rho_hat = make_physical(rho);
    return result;
}

TwoBranchResult weighted_two_branch_reconstruct(
    const std::vector<CountRecord>& branch1,
    const std::vector<CountRecord>& branch2, const TomoOptions& options) {
    const std::array<const std::vector<CountRecord>*, 2> branches{&branch1,
                                                                  &branch2};
    std::array<double, 2> totals{0.0, 0.0};
    for (int b = 0; b < 2; ++b) {
        if (branches[static_cast<std::size_t>(b)]->empty()) {
            fail("weighted_two_branch_reconstruct: empty branch record list");
        }
        for (const CountRecord& r : *branches[static_cast<std::size_t>(b)]) {
            totals[static_cast<std::size_t>(b)] +=
                static_cast<double>(r.counts);
        }
    }
    const double grand = totals[0] + totals[1];
    if (grand <= 0.0) {
        throw std::runtime_error(
            "weighted_two_branch_reconstruct: zero counts in both branches");
    }
    TwoBranchResult out{DensityMatrix::maximally_mixed(2),
                        {totals[0] / grand, totals[1] / grand},
                        {totals[0] == 0.0, totals[1] == 0.0},
                        {}};
    ComplexMatrix target = ComplexMatrix::Zero(2, 2);
    for (int b = 0; b < 2; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        if (out.branch_empty[bi]) {
            continue;
        }
        TomoResult tr = mle_reconstruct(*branches[bi], options);
        // The wave circuit routes path provenance onto the branch
        // polarization basis; reading H as path 1 and V as path 2 inverts
        // that routing, so the matrix carries over entrywise.
        target += out.weights[bi] * tr.rho_hat.matrix();
        out.branches[bi] = std::move(tr);
    }
    out.rho = make_physical(target);
    return out;
}

std::vector<McEstimate> monte_carlo_errors(
    const std::function<std::vector<double>(const std::vector<CountRecord>&)>&
        pipeline,
    const std::vector<CountRecord>& records, int n_samples,
    std::uint64_t seed) {
    if (n_samples < 2) {
        fail("monte_carlo_errors: need at least 2 samples");
    }
    if (records.empty()) {
        fail("monte_carlo_errors: no records");
    }
    std::vector<std::vector<double>> values;
    values.reserve(static_cast<std::size_t>(n_samples));
    std::vector<CountRecord> resampled = records;
    for (int i = 0; i < n_samples; ++i) {
        for (std::size_t j = 0; j < records.size(); ++j) {
            rng::Substream stream(seed, j, static_cast<std::uint64_t>(i));
            resampled[j].counts =
                stream.poisson(static_cast<double>(records[j].counts));
        }
        try {
            values.push_back(pipeline(resampled));
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "monte_carlo resample " << i << " failed: " << e.what();
            throw std::runtime_error(os.str());
        }
        if (values.back().size() != values.front().size()) {
            throw std::runtime_error(
                "monte_carlo_errors: pipeline output length changed");
        }
    }
    const std::size_t width = values.front().size();
    std::vector<McEstimate> out(width);
    for (std::size_t q = 0; q < width; ++q) {
        double mean = 0.0;
        for (const auto& v : values) {
            mean += v[q];
        }
        mean /= static_cast<double>(n_samples);
        double var = 0.0;
        for (const auto& v : values) {
            var += (v[q] - mean) * (v[q] - mean);
        }
        var /= static_cast<double>(n_samples - 1);
        out[q] = McEstimate{mean, std::sqrt(var), n_samples};
    }
    return out;
}

McEstimate monte_carlo_error(
    const std::function<double(const std::vector<CountRecord>&)>& pipeline,
    const std::vector<CountRecord>& records, int n_samples,
    std::uint64_t seed) {
    auto wrapped = [&](const std::vector<CountRecord>& r) {
        return std::vector<double>{pipeline(r)};
    };
    return monte_carlo_errors(wrapped, records, n_samples, seed).front();
}

std::string records_to_csv(const std::vector<CountRecord>& records) {
    std::ostringstream os;
    os << "setting_label,branch,counts,exposure_s\n";
    for (const CountRecord& r : records) {
        char exposure[64];
        std::snprintf(exposure, sizeof exposure, "%.9g", r.exposure_s);
        os << r.setting_label << ',' << r.branch << ',' << r.counts << ','
           << exposure << '\n';
    }
    return os.str();
}

std::vector<CountRecord> records_from_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto parse_fail = [&](const std::string& what) -> void {
        std::ostringstream os;
        os << "count CSV line " << line_no << ": " << what;
        throw std::runtime_error(os.str());
    };
    if (!std::getline(in, line)) {
        ++line_no;
        parse_fail("missing header");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "setting_label,branch,counts,exposure_s") {
        parse_fail("unexpected header '" + line + "'");
    }
    std::vector<CountRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 4) {
            parse_fail("expected 4 fields, found " +
                       std::to_string(fields.size()));
        }
        CountRecord r;
        r.setting_label = fields[0];
        try {
            r.projector = projector_from_label(r.setting_label);
            r.branch = std::stoi(fields[1]);
            const long long counts = std::stoll(fields[2]);
            if (counts < 0) {
                parse_fail("negative count");
            }
            r.counts = static_cast<std::uint64_t>(counts);
            r.exposure_s = std::stod(fields[3]);
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception& e) {
            parse_fail(e.what());
        }
        if (!(r.exposure_s > 0.0)) {
            parse_fail("exposure must be positive");
        }
        records.push_back(std::move(r));
    }
    if (records.empty()) {
        ++line_no;
        parse_fail("no data rows");
    }
    return records;
}

}  // namespace dualitylab::tomo
