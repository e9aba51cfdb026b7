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

#ifndef QLUMP_TOLERANCES_H
#define QLUMP_TOLERANCES_H

#include <cstddef>

namespace qlump {

/// Numerical thresholds shared by every module. All values are absolute.
struct Tolerances {
    /// Max entrywise |H - H^dagger| accepted as Hermitian input.
    double hermitian = 1e-12;
    /// Jacobi stops once the off-diagonal Frobenius norm drops below this
    /// (scaled by max(1, |H|_F)).
    double jacobi_off_diagonal = 1e-14;
    std::size_t jacobi_max_sweeps = 100;
    /// Density matrix validation: Hermiticity, negative eigenvalues, trace.
    double state_hermitian = 1e-10;
    double state_positivity = 1e-10;
    double state_trace = 1e-10;
    /// Branch weights below this are treated as impossible outcomes.
    double zero_branch = 1e-14;
    /// Default threshold for the block-sum lumpability condition.
    double lumpability = 1e-10;
    /// A coherence coefficient below this counts as vanished.
    double coherence_root = 1e-10;
};

/// Exact-enumeration caps: sequences hold at most max_steps + 1 outcomes.
inline constexpr std::size_t max_enumeration_dim = 16;
inline constexpr std::size_t max_enumeration_steps = 8;

}  // namespace qlump

#endif
