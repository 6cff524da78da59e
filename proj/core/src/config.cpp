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

#include "dualitylab/config.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dualitylab {

double max_theta_deg(int n_paths) {
    if (n_paths <= 2) {
        return 90.0;
    }
    // Detector overlap cos(2 theta) must stay above -1/(N-1).
    const double limit =
        0.5 * std::acos(-1.0 / (static_cast<double>(n_paths) - 1.0));
    return limit * 180.0 / std::numbers::pi;
}

std::vector<std::string> ExperimentConfig::validate() const {
    std::vector<std::string> errors;
    auto push = [&](const std::string& msg) { errors.push_back(msg); };
    if (theta_steps < 1) {
        push("theta-steps must be >= 1");
    }
    if (!(theta_start_deg >= 0.0) || !(theta_end_deg >= theta_start_deg)) {
        push("theta range must satisfy 0 <= theta-start <= theta-end");
    }
    const double limit = max_theta_deg(n_paths);
    if (theta_end_deg > limit) {
        std::ostringstream os;
        os << "theta-end " << theta_end_deg << " exceeds " << limit
           << " degrees, the largest angle for " << n_paths << " paths";
        push(os.str());
    }
    if (theta_steps == 1 && theta_end_deg != theta_start_deg) {
        // a single step pins the grid to theta-start; tolerated, not an error
    }
    if (!(flux > 0.0)) {
        push("flux must be > 0");
    }
    if (!(exposure_s > 0.0)) {
        push("exposure must be > 0");
    }
    if (mc_samples < 2) {
        push("mc-samples must be >= 2");
    }
    if (n_paths < 2) {
        push("n-paths must be >= 2");
    }
    if (threads < 0) {
        push("threads must be >= 0");
    }
    return errors;
}

}  // namespace dualitylab
