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

#include "dualitylab/duality.hpp"

#include "dualitylab/coherence.hpp"
#include "dualitylab/discrimination.hpp"
#include "dualitylab/optics.hpp"
#include "dualitylab/parallel.hpp"
#include "dualitylab/rng.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dualitylab::duality {

namespace {

using discrimination::DiscriminationResult;
using optics::CircuitMode;
using optics::DetectorAngle;
using qmath::ComplexMatrix;
using qmath::DensityMatrix;
using qmath::PureState;
using tomo::CountRecord;
using tomo::McEstimate;

constexpr double kIdealTol = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Substream identifiers per theta index.
enum Stream : std::uint64_t {
    kWaveCounts = 1,
    kWaveBootstrap = 2,
    kParticleCounts = 3,
    kParticleBootstrap = 4,
};

SweepBounds bounds_for(int n_paths) {
    const double n = static_cast<double>(n_paths);
    return SweepBounds{std::log2(n), (1.0 - 1.0 / n) * (1.0 - 1.0 / n)};
}

DualityVerdict make_verdict(Relation relation, double lhs, double bound,
                            double tolerance) {
    return DualityVerdict{relation, lhs, bound, lhs <= bound + tolerance,
                          bound - lhs};
}

const SimulatedQuantifiers& require_simulated(const SweepRecord& record) {
    if (!record.simulated) {
        throw std::invalid_argument(
            "verdict: record carries no simulated quantifiers");
    }
    return *record.simulated;
}

VerdictSource resolve(const SweepRecord& record, VerdictSource source) {
    if (source != VerdictSource::Auto) {
        return source;
    }
    return record.simulated ? VerdictSource::Simulated : VerdictSource::Ideal;
}

/// Split two-branch records by their branch tag (1 and 2).
std::pair<std::vector<CountRecord>, std::vector<CountRecord>> split_branches(
    const std::vector<CountRecord>& records) {
    std::pair<std::vector<CountRecord>, std::vector<CountRecord>> out;
    for (const CountRecord& r : records) {
        if (r.branch == 1) {
            out.first.push_back(r);
        } else if (r.branch == 2) {
            out.second.push_back(r);
        } else {
            throw std::invalid_argument("unexpected branch tag in records");
        }
    }
    return out;
}

/// Wave pipeline for two paths: branch tomograms -> target state -> {C, X}.
std::vector<double> wave_quantifiers_2(const std::vector<CountRecord>& records) {
    const auto [b1, b2] = split_branches(records);
    const tomo::TwoBranchResult two =
        tomo::weighted_two_branch_reconstruct(b1, b2);
    const coherence::CoherenceReport rep =
        coherence::coherence_report(two.rho, 2);
    return {rep.c_relent, rep.x};
}

/// Wave pipeline for N > 2: direct target tomography -> {C, X}.
std::vector<double> wave_quantifiers_n(const std::vector<CountRecord>& records,
                                       int n_paths) {
    const tomo::TomoResult fit = tomo::mle_reconstruct(records);
    const coherence::CoherenceReport rep =
        coherence::coherence_report(fit.rho_hat, n_paths);
    return {rep.c_relent, rep.x};
}

/// Particle pipeline: per-(outcome, path) counts -> empirical joint table ->
/// {H, Ps}.
std::vector<double> particle_quantifiers(const std::vector<CountRecord>& records,
                                         int n_paths) {
    const auto n = static_cast<Eigen::Index>(n_paths);
    if (static_cast<Eigen::Index>(records.size()) != n * n) {
        throw std::invalid_argument("particle pipeline: record count mismatch");
    }
    double total = 0.0;
    for (const CountRecord& r : records) {
        total += static_cast<double>(r.counts);
    }
    if (total <= 0.0) {
        throw std::runtime_error("particle pipeline: no counts");
    }
    Eigen::MatrixXd joint(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            joint(i, j) = static_cast<double>(
                              records[static_cast<std::size_t>(i * n + j)]
                                  .counts) /
                          total;
        }
    }
    double ps = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        ps += joint(i, i);
    }
    return {discrimination::mutual_information(joint), ps};
}

McEstimate scaled(const McEstimate& e, double factor, double offset = 0.0) {
    return McEstimate{e.mean * factor + offset, std::abs(factor) * e.std_dev,
                      e.samples};
}

/// Measurement model shared by the ideal and simulated particle side.
struct ParticleModel {
    std::vector<PureState> detectors;
    std::vector<double> priors;
    discrimination::Povm povm;
    PureState joint;  // path (x) detector state
};

ParticleModel particle_model(double theta_deg, int n_paths) {
    if (n_paths == 2) {
        const DetectorAngle theta(theta_deg);
        auto [eta1, eta2] = optics::detector_states(theta);
        discrimination::HelstromPovm hel =
            discrimination::helstrom_povm(eta1, eta2, {0.5, 0.5});
        PureState joint = optics::joint_state(theta);
        return ParticleModel{{eta1, eta2},
                             {0.5, 0.5},
                             std::move(hel.povm),
                             std::move(joint)};
    }
    const double overlap = std::cos(2.0 * theta_deg * std::numbers::pi / 180.0);
    std::vector<PureState> detectors =
        optics::symmetric_detector_states(n_paths, overlap);
    std::vector<double> priors(static_cast<std::size_t>(n_paths),
                               1.0 / static_cast<double>(n_paths));
    discrimination::SquareRootPovm pgm =
        discrimination::pretty_good_povm(detectors, priors);
    PureState joint = optics::joint_state_n(detectors);
    return ParticleModel{std::move(detectors), std::move(priors),
                         std::move(pgm.povm), std::move(joint)};
}

/// Projectors for the joint (outcome i, path j) counting, path-major state.
std::vector<ComplexMatrix> joint_count_operators(const ParticleModel& model,
                                                 int n_paths) {
    const auto n = static_cast<Eigen::Index>(n_paths);
    std::vector<ComplexMatrix> ops;
    std::vector<ComplexMatrix> path_projs;
    for (Eigen::Index j = 0; j < n; ++j) {
        ComplexMatrix pj = ComplexMatrix::Zero(n, n);
        pj(j, j) = 1.0;
        path_projs.push_back(std::move(pj));
    }
    ops.reserve(model.povm.elements.size() * static_cast<std::size_t>(n));
    for (const ComplexMatrix& pi : model.povm.elements) {
        for (Eigen::Index j = 0; j < n; ++j) {
            ops.push_back(qmath::tensor(path_projs[static_cast<std::size_t>(j)],
                                        pi));
        }
    }
    return ops;
}

std::vector<std::string> joint_count_labels(int n_paths) {
    std::vector<std::string> labels;
    for (int i = 1; i <= n_paths; ++i) {
        for (int j = 1; j <= n_paths; ++j) {
            labels.push_back("M" + std::to_string(i) + "D" + std::to_string(j));
        }
    }
    return labels;
}

DensityMatrix wave_output_state(double theta_deg) {
    const DetectorAngle theta(theta_deg);
    const ComplexMatrix u = optics::composite_unitary(CircuitMode::WaveMeasurement);
    const qmath::ComplexVector out = u * optics::joint_state(theta).amplitudes();
    return DensityMatrix(out * out.adjoint());
}

SimulatedQuantifiers simulate_point(double theta_deg,
                                    const ExperimentConfig& config,
                                    std::uint64_t theta_index) {
    const int n = config.n_paths;
    const std::uint64_t seed = config.seed;
    const auto stream_seed = [&](Stream s) {
        return rng::mix(seed, static_cast<std::uint64_t>(s), theta_index);
    };

    // Wave side.
    std::vector<CountRecord> wave_records;
    std::function<std::vector<double>(const std::vector<CountRecord>&)>
        wave_pipeline;
    if (n == 2) {
        wave_records = tomo::simulate_two_branch_records(
            wave_output_state(theta_deg), config.flux, config.exposure_s,
            stream_seed(kWaveCounts));
        wave_pipeline = wave_quantifiers_2;
    } else {
        const double overlap =
            std::cos(2.0 * theta_deg * std::numbers::pi / 180.0);
        wave_records = tomo::simulate_counts(
            optics::target_state_n(n, overlap), tomo::ic_projectors(n),
            tomo::ic_labels(n), config.flux, config.exposure_s,
            stream_seed(kWaveCounts));
        wave_pipeline = [n](const std::vector<CountRecord>& r) {
            return wave_quantifiers_n(r, n);
        };
    }
    const std::vector<McEstimate> wave_mc = tomo::monte_carlo_errors(
        wave_pipeline, wave_records, config.mc_samples,
        stream_seed(kWaveBootstrap));

    // Particle side.
    const ParticleModel model = particle_model(theta_deg, n);
    const std::vector<CountRecord> particle_records = tomo::simulate_counts(
        model.joint.projector(), joint_count_operators(model, n),
        joint_count_labels(n), config.flux, config.exposure_s,
        stream_seed(kParticleCounts));
    const auto particle_pipeline = [n](const std::vector<CountRecord>& r) {
        return particle_quantifiers(r, n);
    };
    const std::vector<McEstimate> particle_mc = tomo::monte_carlo_errors(
        particle_pipeline, particle_records, config.mc_samples,
        stream_seed(kParticleBootstrap));

    SimulatedQuantifiers sim{};
    sim.c = wave_mc[0];
    sim.x = wave_mc[1];
    sim.h = particle_mc[0];
    sim.ps = particle_mc[1];
    sim.p = scaled(sim.ps, 1.0, -1.0 / static_cast<double>(n));
    if (n == 2) {
        // For two paths V = 2|rho_12| = 2X and D = 2P identically.
        sim.v = scaled(sim.x, 2.0);
        sim.d = scaled(sim.p, 2.0);
    } else {
        sim.v = McEstimate{kNaN, kNaN, config.mc_samples};
        sim.d = McEstimate{kNaN, kNaN, config.mc_samples};
    }
    return sim;
}

}  // namespace

std::vector<double> theta_grid(double start_deg, double end_deg, int steps) {
    if (steps < 1) {
        throw std::invalid_argument("theta_grid: steps must be >= 1");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid.push_back(start_deg);
        return grid;
    }
    const double step = (end_deg - start_deg) / static_cast<double>(steps - 1);
    for (int k = 0; k < steps; ++k) {
        grid.push_back(start_deg + static_cast<double>(k) * step);
    }
    grid.back() = end_deg;  // avoid accumulated rounding at the endpoint
    return grid;
}

SweepRecord ideal_record(double theta_deg, int n_paths) {
    if (n_paths < 2) {
        throw std::invalid_argument("ideal_record: n_paths must be >= 2");
    }
    SweepRecord record{theta_deg, n_paths, {}, std::nullopt,
                       bounds_for(n_paths)};
    const ParticleModel model = particle_model(theta_deg, n_paths);
    const DiscriminationResult disc =
        discrimination::discriminate(model.povm, model.detectors, model.priors);

    DensityMatrix target =
        n_paths == 2
            ? optics::target_state(DetectorAngle(theta_deg))
            : optics::target_state_n(
                  n_paths,
                  std::cos(2.0 * theta_deg * std::numbers::pi / 180.0));
    const coherence::CoherenceReport rep =
        coherence::coherence_report(target, n_paths);

    QuantifierSet& q = record.ideal;
    q.c = rep.c_relent;
    q.x = rep.x;
    q.h = disc.mutual_info;
    q.ps = disc.p_success;
    q.p = q.ps - 1.0 / static_cast<double>(n_paths);
    if (n_paths == 2) {
        q.v = 2.0 * std::abs(target.entry(0, 1));
        q.d = 2.0 * (q.ps - 0.5);
    } else {
        q.v = kNaN;
        q.d = kNaN;
    }
    return record;
}

std::vector<SweepRecord> ideal_sweep(const std::vector<double>& thetas_deg,
                                     int n_paths) {
    std::vector<SweepRecord> records;
    records.reserve(thetas_deg.size());
    for (double theta : thetas_deg) {
        records.push_back(ideal_record(theta, n_paths));
    }
    return records;
}

DualityVerdict verify_quadratic(const SweepRecord& record,
                                VerdictSource source) {
    const double bound = record.bounds.quadratic_bound;
    if (resolve(record, source) == VerdictSource::Ideal) {
        const double lhs =
            record.ideal.p * record.ideal.p + record.ideal.x * record.ideal.x;
        return make_verdict(Relation::Quadratic, lhs, bound, kIdealTol);
    }
    const SimulatedQuantifiers& sim = require_simulated(record);
    const double lhs = sim.p.mean * sim.p.mean + sim.x.mean * sim.x.mean;
    const double sigma = std::hypot(2.0 * std::abs(sim.p.mean) * sim.p.std_dev,
                                    2.0 * std::abs(sim.x.mean) * sim.x.std_dev);
    return make_verdict(Relation::Quadratic, lhs, bound, 3.0 * sigma);
}

DualityVerdict verify_entropic(const SweepRecord& record,
                               VerdictSource source) {
    const double bound = record.bounds.entropic_bound;
    if (resolve(record, source) == VerdictSource::Ideal) {
        return make_verdict(Relation::Entropic, record.ideal.c + record.ideal.h,
                            bound, kIdealTol);
    }
    const SimulatedQuantifiers& sim = require_simulated(record);
    const double sigma = std::hypot(sim.c.std_dev, sim.h.std_dev);
    return make_verdict(Relation::Entropic, sim.c.mean + sim.h.mean, bound,
                        3.0 * sigma);
}

DualityVerdict verify_gy(const SweepRecord& record, VerdictSource source) {
    if (record.n_paths != 2) {
        throw std::invalid_argument(
            "verify_gy: the visibility relation is defined for two paths");
    }
    if (resolve(record, source) == VerdictSource::Ideal) {
        const double lhs =
            record.ideal.v * record.ideal.v + record.ideal.d * record.ideal.d;
        return make_verdict(Relation::GreenbergerYasin, lhs, 1.0, kIdealTol);
    }
    const SimulatedQuantifiers& sim = require_simulated(record);
    const double lhs = sim.v.mean * sim.v.mean + sim.d.mean * sim.d.mean;
    const double sigma = std::hypot(2.0 * std::abs(sim.v.mean) * sim.v.std_dev,
                                    2.0 * std::abs(sim.d.mean) * sim.d.std_dev);
    return make_verdict(Relation::GreenbergerYasin, lhs, 1.0, 3.0 * sigma);
}

std::vector<tomo::CountRecord> simulated_wave_records(
    const ExperimentConfig& config, std::size_t theta_index) {
    if (config.n_paths != 2) {
        throw std::invalid_argument(
            "simulated_wave_records: two-branch records exist for two paths");
    }
    const std::vector<double> grid = theta_grid(
        config.theta_start_deg, config.theta_end_deg, config.theta_steps);
    if (theta_index >= grid.size()) {
        throw std::invalid_argument("simulated_wave_records: index out of range");
    }
    return tomo::simulate_two_branch_records(
        wave_output_state(grid[theta_index]), config.flux, config.exposure_s,
        rng::mix(config.seed, static_cast<std::uint64_t>(kWaveCounts),
                 static_cast<std::uint64_t>(theta_index)));
}

std::vector<SweepRecord> simulated_sweep(const ExperimentConfig& config) {
    const std::vector<std::string> errors = config.validate();
    if (!errors.empty()) {
        std::ostringstream os;
        os << "simulated_sweep: invalid configuration:";
        for (const std::string& e : errors) {
            os << " " << e << ";";
        }
        throw std::invalid_argument(os.str());
    }
    const std::vector<double> grid = theta_grid(
        config.theta_start_deg, config.theta_end_deg, config.theta_steps);
    std::vector<SweepRecord> records(grid.size());
    parallel_for(grid.size(), config.threads, [&](std::size_t t) {
        SweepRecord record = ideal_record(grid[t], config.n_paths);
        record.simulated =
            simulate_point(grid[t], config, static_cast<std::uint64_t>(t));
        records[t] = std::move(record);
    });
    return records;
}

}  // namespace dualitylab::duality
