// Copyright 2026 The qlump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLUMP_PARALLEL_H
#define QLUMP_PARALLEL_H

#include <cstddef>
#include <functional>

namespace qlump {

/// Worker count: QLUMP_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(i) for every i in [0, count) on up to worker_count() threads.
/// Each index is visited exactly once; the first exception thrown by any
/// call is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

}  // namespace qlump

#endif
