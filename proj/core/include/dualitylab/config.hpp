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

#include <cstdint>
#include <string>
#include <vector>

namespace dualitylab {

enum class OutputFormat { Csv, Json };

/// Sweep configuration. Defaults match the experimental statistics:
/// 5e3 counts per second, 10 s per data point, 100 Monte Carlo samples.
struct ExperimentConfig {
    double theta_start_deg = 0.0;
    double theta_end_deg = 45.0;
    int theta_steps = 19;
    double flux = 5000.0;      // counts per second
    double exposure_s = 10.0;  // seconds per setting
    int mc_samples = 100;
    std::uint64_t seed = 1;
    int n_paths = 2;
    OutputFormat output_format = OutputFormat::Csv;
    int threads = 0;  // 0 = hardware concurrency

    /// Empty when the configuration is usable; otherwise one message per
    /// violated constraint.
    [[nodiscard]] std::vector<std::string> validate() const;
};

/// Largest theta for which the N-path symmetric detector family stays
/// physical (90 degrees for N = 2).
double max_theta_deg(int n_paths);

}  // namespace dualitylab
