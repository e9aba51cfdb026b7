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

#ifndef QLUMP_RNG_H
#define QLUMP_RNG_H

#include <cstdint>
#include <limits>

namespace qlump {

/// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based generator. The i-th output (i = 1, 2, ...) of a stream
/// with key k is mix64(k + i * 0x9E3779B97F4A7C15), so any draw can be
/// reproduced from (key, counter) alone. A fresh stream has key
/// mix64(seed); split(j) derives the child key mix64(key ^ mix64(j + 1)).
///
/// Unit draws use the top 53 bits: (u64 >> 11) * 2^-53, in [0, 1).
class CounterRng {
   public:
    using result_type = uint64_t;
    static constexpr uint64_t increment = 0x9E3779B97F4A7C15ULL;

    explicit constexpr CounterRng(uint64_t seed) : key_(mix64(seed)), counter_(0) {
    }

    constexpr uint64_t next_u64() {
        counter_++;
        return mix64(key_ + counter_ * increment);
    }
    constexpr double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    constexpr CounterRng split(uint64_t stream) const {
        CounterRng child(0);
        child.key_ = mix64(key_ ^ mix64(stream + 1));
        return child;
    }

    constexpr uint64_t key() const {
        return key_;
    }
    constexpr uint64_t counter() const {
        return counter_;
    }

    static constexpr uint64_t min() {
        return 0;
    }
    static constexpr uint64_t max() {
        return std::numeric_limits<uint64_t>::max();
    }
    constexpr uint64_t operator()() {
        return next_u64();
    }

   private:
    uint64_t key_;
    uint64_t counter_;
};

}  // namespace qlump

#endif
