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

#include "dualitylab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dualitylab::rng {

namespace {

std::uint64_t splitmix_next(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr double kPtrdThreshold = 10.0;

}  // namespace

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a;
    s = splitmix_next(s) ^ b;
    return splitmix_next(s);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(a, b), c);
}

Substream::Substream(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t sample)
    : state_(mix(seed, stream, sample)) {}

std::uint64_t Substream::next_u64() { return splitmix_next(state_); }

double Substream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Substream::poisson(double mean) {
    if (!std::isfinite(mean) || mean < 0.0) {
        throw std::invalid_argument("poisson: mean must be finite and >= 0");
    }
    if (mean == 0.0) {
        return 0;
    }
    if (mean < kPtrdThreshold) {
        // Inversion by uniform products.
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = next_double();
        while (prod > limit) {
            ++k;
            prod *= next_double();
        }
        return k;
    }
    // Transformed rejection with decomposition (Hoermann's PTRD), with the
    // exact log-pmf acceptance test via lgamma.
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        double u;
        double v = next_double();
        if (v <= 0.86 * vr) {
            u = v / vr - 0.43;
            const double us = 0.5 - std::abs(u);
            return static_cast<std::uint64_t>(
                std::floor((2.0 * a / us + b) * u + mean + 0.445));
        }
        if (v >= vr) {
            u = next_double() - 0.5;
        } else {
            u = v / vr - 0.93;
            u = std::copysign(0.5, u) - u;
            v = next_double() * vr;
        }
        const double us = 0.5 - std::abs(u);
        if (us <= 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.445);
        v = v * inv_alpha / (a / (us * us) + b);
        if (kf >= 0.0 &&
            std::log(v) <= kf * log_mean - mean - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

}  // namespace dualitylab::rng
