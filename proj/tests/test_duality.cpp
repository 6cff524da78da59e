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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dualitylab/duality.hpp"

#include "test_util.hpp"

#include <cmath>

using namespace dualitylab;
using namespace dualitylab::duality;
using test::binary_entropy;
using test::kDegToRad;

namespace {

std::vector<double> default_grid() { return theta_grid(0.0, 45.0, 19); }

ExperimentConfig small_config(double theta, std::uint64_t seed,
                              int mc_samples = 60) {
    ExperimentConfig config;
    config.theta_start_deg = theta;
    config.theta_end_deg = theta;
    config.theta_steps = 1;
    config.mc_samples = mc_samples;
    config.seed = seed;
    config.threads = 1;
    return config;
}

}  // namespace

TEST_CASE("theta grid construction") {
    const auto grid = default_grid();
    REQUIRE(grid.size() == 19);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 45.0);
    CHECK(grid[9] == doctest::Approx(22.5).epsilon(1e-12));
    CHECK(theta_grid(30.0, 45.0, 1) == std::vector<double>{30.0});
    CHECK_THROWS_AS(theta_grid(0.0, 45.0, 0), std::invalid_argument);
}

TEST_CASE("ideal records at the landmark angles") {
    SUBCASE("theta = 0") {
        const SweepRecord r = ideal_record(0.0);
        CHECK(r.ideal.c == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.ideal.h == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.ideal.x == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.ideal.p == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.ideal.v == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.ideal.d == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("theta = 45") {
        const SweepRecord r = ideal_record(45.0);
        CHECK(r.ideal.c == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.ideal.h == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.ideal.x == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.ideal.p == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("theta = 22.5: C equals H for this family") {
        const SweepRecord r = ideal_record(22.5);
        // Frozen from the closed-form oracles of the coherence and
        // mutual-information expressions.
        CHECK(r.ideal.c == doctest::Approx(0.3991239633071439).epsilon(1e-12));
        CHECK(r.ideal.h == doctest::Approx(0.3991239633071439).epsilon(1e-12));
        CHECK(r.ideal.x ==
              doctest::Approx(0.35355339059327373).epsilon(1e-12));
        CHECK(r.ideal.ps ==
              doctest::Approx(0.8535533905932737).epsilon(1e-12));
        CHECK(std::abs(r.ideal.c - r.ideal.h) < 1e-12);
    }
}

TEST_CASE("pipeline quantifiers match the scalar closed forms on the grid") {
    for (const double theta : default_grid()) {
        const SweepRecord r = ideal_record(theta);
        const double t = theta * kDegToRad;
        const double c2 = std::cos(t) * std::cos(t);
        const double ps = 0.5 * (1.0 + std::sin(2.0 * t));
        CHECK(std::abs(r.ideal.c - (1.0 - binary_entropy(c2))) < 1e-10);
        CHECK(std::abs(r.ideal.h - (1.0 - binary_entropy(ps))) < 1e-10);
        CHECK(std::abs(r.ideal.x - 0.5 * std::cos(2.0 * t)) < 1e-10);
        CHECK(std::abs(r.ideal.ps - ps) < 1e-10);
    }
}

TEST_CASE("ideal quadratic relation is an equality at N = 2") {
    for (const double theta : default_grid()) {
        const DualityVerdict v = verify_quadratic(ideal_record(theta));
        CHECK(v.satisfied);
        CHECK(std::abs(v.lhs - 0.25) < 1e-12);
        CHECK(std::abs(v.slack) < 1e-12);
    }
}

TEST_CASE("ideal entropic relation: equality only at the endpoints") {
    const DualityVerdict at0 = verify_entropic(ideal_record(0.0));
    CHECK(at0.satisfied);
    CHECK(std::abs(at0.lhs - 1.0) < 1e-10);
    const DualityVerdict at45 = verify_entropic(ideal_record(45.0));
    CHECK(std::abs(at45.lhs - 1.0) < 1e-10);
    const DualityVerdict mid = verify_entropic(ideal_record(22.5));
    CHECK(mid.satisfied);
    CHECK(mid.lhs == doctest::Approx(0.7982479266142878).epsilon(1e-10));
    CHECK(mid.slack > 0.01);
    for (const double theta : default_grid()) {
        const DualityVerdict v = verify_entropic(ideal_record(theta));
        CHECK(v.satisfied);
        if (theta != 0.0 && theta != 45.0) {
            CHECK(v.slack > 1e-4);
        }
    }
}

TEST_CASE("ideal visibility relation") {
    const SweepRecord at0 = ideal_record(0.0);
    CHECK(verify_gy(at0).lhs == doctest::Approx(1.0).epsilon(1e-12));
    const SweepRecord at30 = ideal_record(30.0);
    CHECK(at30.ideal.v == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(at30.ideal.d ==
          doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    CHECK(verify_gy(at30).lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(verify_gy(at30).satisfied);
    CHECK_THROWS_AS(verify_gy(ideal_record(10.0, 3)), std::invalid_argument);
}

TEST_CASE("complementarity is monotone on [0, 45]") {
    double prev_c = 2.0;
    double prev_x = 2.0;
    double prev_h = -1.0;
    double prev_p = -1.0;
    for (const double theta : default_grid()) {
        const SweepRecord r = ideal_record(theta);
        CHECK(r.ideal.c <= prev_c + 1e-12);
        CHECK(r.ideal.x <= prev_x + 1e-12);
        CHECK(r.ideal.h >= prev_h - 1e-12);
        CHECK(r.ideal.p >= prev_p - 1e-12);
        prev_c = r.ideal.c;
        prev_x = r.ideal.x;
        prev_h = r.ideal.h;
        prev_p = r.ideal.p;
    }
}

TEST_CASE("N = 3 extension") {
    SUBCASE("orthogonal detectors: quadratic bound attained") {
        const SweepRecord r = ideal_record(45.0, 3);
        CHECK(r.ideal.ps == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.ideal.x == doctest::Approx(0.0).epsilon(1e-10));
        const DualityVerdict v = verify_quadratic(r);
        CHECK(v.satisfied);
        CHECK(v.bound == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
        CHECK(std::abs(v.slack) < 1e-9);
    }
    SUBCASE("both relations hold across the sweep (achievability)") {
        for (const double theta : default_grid()) {
            const SweepRecord r = ideal_record(theta, 3);
            CHECK(verify_quadratic(r).satisfied);
            const DualityVerdict ent = verify_entropic(r);
            CHECK(ent.satisfied);
            CHECK(ent.bound == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
        }
    }
    SUBCASE("identical detectors: guessing limit") {
        const SweepRecord r = ideal_record(0.0, 3);
        CHECK(r.ideal.ps == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
        CHECK(r.ideal.x == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
        CHECK(verify_quadratic(r).satisfied);
        CHECK(std::abs(verify_quadratic(r).slack) < 1e-9);
    }
}

TEST_CASE("simulated record verdicts hold within three sigma") {
    const auto records = simulated_sweep(small_config(22.5, 11));
    REQUIRE(records.size() == 1);
    const SweepRecord& r = records.front();
    REQUIRE(r.simulated.has_value());
    CHECK(verify_quadratic(r).satisfied);
    CHECK(verify_entropic(r).satisfied);
    CHECK(verify_gy(r).satisfied);
    // Auto source picks the simulated values: the lhs differs from ideal.
    CHECK(verify_quadratic(r, VerdictSource::Ideal).lhs ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("simulated endpoint estimates land on the quoted maxima") {
    const auto at0 = simulated_sweep(small_config(0.0, 5, 100));
    const auto& sim0 = *at0.front().simulated;
    CHECK(std::abs(sim0.c.mean - 1.0) < 0.01);
    CHECK(std::abs(sim0.x.mean - 0.5) < 0.005);
    CHECK(sim0.c.std_dev <= 0.005);
    const auto at45 = simulated_sweep(small_config(45.0, 5, 100));
    const auto& sim45 = *at45.front().simulated;
    CHECK(std::abs(sim45.h.mean - 1.0) < 0.02);
    CHECK(std::abs(sim45.p.mean - 0.5) < 0.005);
}

TEST_CASE("simulated sweep is deterministic and thread-count independent") {
    ExperimentConfig config;
    config.theta_steps = 5;
    config.mc_samples = 30;
    config.seed = 2027;
    config.threads = 1;
    const auto a = simulated_sweep(config);
    const auto b = simulated_sweep(config);
    config.threads = 2;
    const auto c = simulated_sweep(config);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& sa = *a[i].simulated;
        const auto& sb = *b[i].simulated;
        const auto& sc = *c[i].simulated;
        CHECK(sa.c.mean == sb.c.mean);
        CHECK(sa.c.mean == sc.c.mean);
        CHECK(sa.h.std_dev == sc.h.std_dev);
        CHECK(sa.x.mean == sc.x.mean);
        CHECK(sa.ps.mean == sc.ps.mean);
    }
}

TEST_CASE("simulated error bars stay below the half-percent cap") {
    ExperimentConfig config;  // paper statistics
    config.seed = 3;
    const auto records = simulated_sweep(config);
    for (const auto& r : records) {
        const auto& s = *r.simulated;
        for (const auto* e : {&s.c, &s.h, &s.x, &s.ps}) {
            CHECK(e->std_dev <= 0.005);
        }
    }
}

TEST_CASE("verdict satisfaction rate over 100 seeds is at least 99 percent") {
    int satisfied = 0;
    int total = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        ExperimentConfig config;  // default grid at paper statistics
        config.seed = rng::mix(900, seed);
        config.threads = 0;  // let the pool decide; results are invariant
        const auto records = simulated_sweep(config);
        for (const auto& r : records) {
            total += 2;
            satisfied += verify_quadratic(r).satisfied ? 1 : 0;
            satisfied += verify_entropic(r).satisfied ? 1 : 0;
        }
    }
    CHECK(total == 100 * 19 * 2);
    CHECK(static_cast<double>(satisfied) >= 0.99 * total);
}

TEST_CASE("simulated sweep rejects invalid configurations") {
    ExperimentConfig config;
    config.mc_samples = 1;
    CHECK_THROWS_AS(simulated_sweep(config), std::invalid_argument);
    ExperimentConfig bad_paths;
    bad_paths.n_paths = 1;
    CHECK(!bad_paths.validate().empty());
    ExperimentConfig too_far;
    too_far.n_paths = 3;
    too_far.theta_end_deg = 75.0;
    CHECK(!too_far.validate().empty());
}

TEST_CASE("N = 3 simulated sweep produces finite estimates and verdicts") {
    ExperimentConfig config;
    config.n_paths = 3;
    config.theta_start_deg = 10.0;
    config.theta_end_deg = 40.0;
    config.theta_steps = 3;
    config.mc_samples = 30;
    config.seed = 8;
    config.threads = 1;
    const auto records = simulated_sweep(config);
    REQUIRE(records.size() == 3);
    for (const auto& r : records) {
        const auto& s = *r.simulated;
        CHECK(std::isfinite(s.c.mean));
        CHECK(std::isfinite(s.h.mean));
        CHECK(std::isfinite(s.x.mean));
        CHECK(std::isfinite(s.ps.mean));
        CHECK(verify_quadratic(r).satisfied);
        CHECK(verify_entropic(r).satisfied);
    }
}

TEST_CASE("wave records are reproducible through the public helper") {
    ExperimentConfig config = small_config(30.0, 17);
    const auto a = simulated_wave_records(config, 0);
    const auto b = simulated_wave_records(config, 0);
    REQUIRE(a.size() == 12);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].counts == b[k].counts);
    }
}
