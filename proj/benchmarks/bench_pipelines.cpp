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
#include "dualitylab/discrimination.hpp"
#include "dualitylab/duality.hpp"
#include "dualitylab/optics.hpp"
#include "dualitylab/rng.hpp"
#include "dualitylab/tomo.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace dualitylab;
using optics::DetectorAngle;

void BM_IdealRecord(benchmark::State& state) {
    double theta = 0.0;
    for (auto _ : state) {
        auto record = duality::ideal_record(12.5 + theta);
        benchmark::DoNotOptimize(record);
        theta = theta == 0.0 ? 10.0 : 0.0;
    }
}
BENCHMARK(BM_IdealRecord);

void BM_PoissonSample(benchmark::State& state) {
    const double mean = static_cast<double>(state.range(0));
    std::uint64_t i = 0;
    for (auto _ : state) {
        rng::Substream s(7, 0, i++);
        benchmark::DoNotOptimize(s.poisson(mean));
    }
}
BENCHMARK(BM_PoissonSample)->Arg(5)->Arg(50000);

void BM_MleReconstruct(benchmark::State& state) {
    const auto truth = optics::target_state(DetectorAngle(22.5));
    const auto records =
        tomo::simulate_counts(truth, tomo::pauli_projectors(),
                              tomo::pauli_labels(), 5000.0, 10.0, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tomo::mle_reconstruct(records));
    }
}
BENCHMARK(BM_MleReconstruct);

void BM_TwoBranchPipeline(benchmark::State& state) {
    const qmath::ComplexMatrix u =
        optics::composite_unitary(optics::CircuitMode::WaveMeasurement);
    const qmath::ComplexVector out =
        u * optics::joint_state(DetectorAngle(30.0)).amplitudes();
    const qmath::DensityMatrix rho_out(out * out.adjoint());
    const auto records = tomo::simulate_two_branch_records(rho_out, 5000.0,
                                                           10.0, 17);
    for (auto _ : state) {
        std::vector<tomo::CountRecord> b1;
        std::vector<tomo::CountRecord> b2;
        for (const auto& r : records) {
            (r.branch == 1 ? b1 : b2).push_back(r);
        }
        const auto result = tomo::weighted_two_branch_reconstruct(b1, b2);
        benchmark::DoNotOptimize(
            coherence::coherence_report(result.rho, 2));
    }
}
BENCHMARK(BM_TwoBranchPipeline);

void BM_SimulatedPoint(benchmark::State& state) {
    ExperimentConfig config;
    config.theta_start_deg = 22.5;
    config.theta_end_deg = 22.5;
    config.theta_steps = 1;
    config.mc_samples = static_cast<int>(state.range(0));
    config.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(duality::simulated_sweep(config));
    }
}
BENCHMARK(BM_SimulatedPoint)->Arg(10)->Arg(100);

void BM_HelstromMutualInfo(benchmark::State& state) {
    const auto [eta1, eta2] = optics::detector_states(DetectorAngle(22.5));
    const std::vector<qmath::PureState> states{eta1, eta2};
    const std::vector<double> priors{0.5, 0.5};
    for (auto _ : state) {
        const auto hel = discrimination::helstrom_povm(eta1, eta2, {0.5, 0.5});
        benchmark::DoNotOptimize(
            discrimination::discriminate(hel.povm, states, priors));
    }
}
BENCHMARK(BM_HelstromMutualInfo);

}  // namespace

BENCHMARK_MAIN();
