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

#include <cstddef>
#include <functional>

namespace dualitylab {

/// Number of worker threads: `requested` if positive, else the
/// DUALITYLAB_THREADS environment variable, else hardware concurrency.
std::size_t resolve_threads(int requested);

/// Run fn(i) for i in [0, n) across worker threads. Each index is
/// independent; results must be written to preallocated slots so the output
/// cannot depend on scheduling. Exceptions are collected and the first one
/// rethrown.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace dualitylab
