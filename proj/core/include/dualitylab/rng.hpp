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

/// Counter-based random substreams. Every consumer derives an independent
/// stream from (seed, stream, sample), so results do not depend on execution
/// order or thread count.

#pragma once

#include <cstdint>

namespace dualitylab::rng {

/// Mix integers into a single 64-bit key (splitmix64 finalizer chain).
std::uint64_t mix(std::uint64_t a, std::uint64_t b);
std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c);

/// Deterministic generator keyed by (seed, stream, sample).
class Substream {
  public:
    Substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t sample);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double next_double();

    /// Poisson sample with the given mean. Exact inversion for small means,
    /// transformed rejection (PTRD) for large ones. Throws on negative or
    /// non-finite mean.
    std::uint64_t poisson(double mean);

  private:
    std::uint64_t state_;
};

}  // namespace dualitylab::rng
