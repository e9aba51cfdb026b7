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


#include "qlump/rng.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace qlump {
namespace {

TEST(CounterRng, SeedZeroReproducesSplitMix64Reference) {
    // mix64(0) = 0, so seed 0 walks the plain SplitMix64 sequence from
    // state 0. Reference outputs of that generator:
    static_assert(mix64(0) == 0);
    CounterRng rng(0);
    EXPECT_EQ(rng.next_u64(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next_u64(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next_u64(), 0x06C45D188009454FULL);
    EXPECT_EQ(rng.counter(), 3u);
}

TEST(CounterRng, DrawIsAFunctionOfKeyAndCounter) {
    CounterRng rng(12345);
    uint64_t key = rng.key();
    EXPECT_EQ(key, mix64(12345));
    for (uint64_t i = 1; i <= 10; i++) {
        EXPECT_EQ(rng.next_u64(), mix64(key + i * CounterRng::increment));
    }
}

TEST(CounterRng, UnitDrawsUseTop53Bits) {
    CounterRng a(9);
    CounterRng b(9);
    for (int i = 0; i < 1000; i++) {
        uint64_t raw = a.next_u64();
        double u = b.next_unit();
        EXPECT_EQ(u, static_cast<double>(raw >> 11) / 9007199254740992.0);
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(CounterRng, SplitStreamsAreDeterministicAndDistinct) {
    CounterRng root(7);
    EXPECT_EQ(root.split(3).key(), mix64(root.key() ^ mix64(4)));
    EXPECT_EQ(root.split(3).next_u64(), root.split(3).next_u64());
    std::set<uint64_t> firsts;
    for (uint64_t j = 0; j < 1000; j++) {
        firsts.insert(root.split(j).next_u64());
    }
    EXPECT_EQ(firsts.size(), 1000u);
    // Splitting does not advance the parent.
    EXPECT_EQ(root.counter(), 0u);
}

TEST(CounterRng, UniformMoments) {
    CounterRng rng(2024);
    const int n = 200000;
    double sum = 0;
    double sum_sq = 0;
    for (int i = 0; i < n; i++) {
        double u = rng.next_unit();
        sum += u;
        sum_sq += u * u;
    }
    double mean = sum / n;
    double var = sum_sq / n - mean * mean;
    // Five standard errors.
    EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(var, 1.0 / 12, 5 * std::sqrt(1.0 / 180 / n));
}

TEST(CounterRng, WorksAsUniformRandomBitGenerator) {
    CounterRng rng(1);
    std::uniform_int_distribution<int> die(1, 6);
    std::array<int, 7> counts{};
    for (int i = 0; i < 6000; i++) {
        counts[die(rng)]++;
    }
    for (int face = 1; face <= 6; face++) {
        EXPECT_GT(counts[face], 800);
        EXPECT_LT(counts[face], 1200);
    }
}

}  // namespace
}  // namespace qlump
