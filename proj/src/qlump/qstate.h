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

#ifndef QLUMP_QSTATE_H
#define QLUMP_QSTATE_H

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlump/linalg.h"
#include "qlump/tolerances.h"

namespace qlump {

/// A density operator. Post-measurement branches are carried unnormalized:
/// their trace is the probability of the outcomes that produced them.
class DensityMatrix {
   public:
    /// Validates Hermiticity, positivity and unit trace. Throws InvalidState.
    static DensityMatrix from_matrix(ComplexMatrix mat, const Tolerances &tol = {});
    /// Wraps without validation. Used for channel outputs.
    static DensityMatrix trusted(ComplexMatrix mat, bool normalized);

    const ComplexMatrix &mat() const {
        return mat_;
    }
    bool normalized() const {
        return normalized_;
    }
    std::size_t dim() const {
        return mat_.dim();
    }
    double trace() const {
        return qlump::trace(mat_).real();
    }
    Complex operator()(std::size_t row, std::size_t col) const {
        return mat_(row, col);
    }

    /// Checks the invariants for the current normalization flag and throws
    /// InvalidState describing the first violation.
    void check_invariants(const Tolerances &tol = {}) const;

   private:
    DensityMatrix(ComplexMatrix mat, bool normalized) : mat_(std::move(mat)), normalized_(normalized) {
    }
    ComplexMatrix mat_;
    bool normalized_;
};

/// |psi><psi| / <psi|psi>. Throws ZeroVector.
DensityMatrix pure_state(std::span<const Complex> amplitudes);
/// Diagonal state with the given non-negative weights, rescaled to unit trace.
DensityMatrix diagonal_state(std::span<const double> weights);
DensityMatrix basis_state(std::size_t dim, std::size_t index);
DensityMatrix maximally_mixed(std::size_t dim);

/// Labeled partition of the basis indices {0..dim-1} into mesostates.
/// Block order is fixed at construction and drives every iteration.
class MesostatePartition {
   public:
    struct Block {
        std::string label;
        std::vector<std::size_t> members;
    };

    /// Throws InvalidPartition unless the blocks are non-empty, disjoint,
    /// cover {0..dim-1} and carry unique labels. Members are sorted.
    MesostatePartition(std::size_t dim, std::vector<Block> blocks);

    /// Parses the literal `A:0,2,4;B:1,3,5`. When `dim` is omitted it is
    /// the number of indices mentioned.
    static MesostatePartition parse(std::string_view literal, std::size_t dim = 0);
    /// One block per basis index, labeled by the index.
    static MesostatePartition singletons(std::size_t dim);
    /// A = even indices, B = odd indices.
    static MesostatePartition parity(std::size_t dim);

    std::size_t dim() const {
        return dim_;
    }
    std::size_t size() const {
        return blocks_.size();
    }
    const Block &block(std::size_t index) const {
        return blocks_.at(index);
    }
    const std::vector<Block> &blocks() const {
        return blocks_;
    }
    /// Throws UnknownLabel.
    std::size_t index_of(std::string_view label) const;
    /// Index of the block holding basis index `site`. Throws IndexOutOfRange.
    std::size_t block_of(std::size_t site) const;
    bool is_singletons() const;

    std::string str() const;
    bool operator==(const MesostatePartition &other) const;

   private:
    std::size_t dim_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> owner_;
};

/// Orthogonal projector onto one basis vector or one mesostate.
struct Projector {
    enum class Kind { rank1, block };
    Kind kind;
    std::size_t index;  // basis index (rank1) or block index (block)
    ComplexMatrix mat;

    static Projector rank1(std::size_t dim, std::size_t index);
    static Projector block(const MesostatePartition &part, std::string_view label);
};

struct CollapseResult {
    double prob;
    /// Unnormalized post-measurement state; exactly zero when zero_branch.
    DensityMatrix post;
    bool zero_branch;
};

/// Born probability of index x and the branch Pi_x rho Pi_x.
CollapseResult ideal_collapse(const DensityMatrix &rho, std::size_t x, const Tolerances &tol = {});

/// Noisy detection of mesostate `label`: sum over x in the block of
/// Pi_x rho Pi_x. The branch is diagonal.
CollapseResult von_neumann_collapse(
    const DensityMatrix &rho, const MesostatePartition &part, std::string_view label, const Tolerances &tol = {});
CollapseResult von_neumann_collapse(
    const DensityMatrix &rho, const MesostatePartition &part, std::size_t block, const Tolerances &tol = {});

/// Degenerate detection of mesostate `label`: Pi_A rho Pi_A with the block
/// projector Pi_A. Coherences inside the block survive.
CollapseResult lueders_collapse(
    const DensityMatrix &rho, const MesostatePartition &part, std::string_view label, const Tolerances &tol = {});
CollapseResult lueders_collapse(
    const DensityMatrix &rho, const MesostatePartition &part, std::size_t block, const Tolerances &tol = {});

/// Renormalized branch state. Throws ZeroProbabilityBranch.
DensityMatrix condition(const CollapseResult &branch);

/// Strength of the dephasing channel. `complete()` is the infinite-strength
/// sentinel that removes every off-diagonal entry.
class Dephasing {
   public:
    /// Throws NegativeGamma for gamma < 0 or NaN.
    static Dephasing finite(double gamma);
    static Dephasing complete() {
        return Dephasing(0, true);
    }
    bool is_complete() const {
        return complete_;
    }
    double gamma() const {
        return gamma_;
    }

   private:
    Dephasing(double gamma, bool complete) : gamma_(gamma), complete_(complete) {
    }
    double gamma_;
    bool complete_;
};

/// Scales off-diagonal entries by exp(-gamma); the diagonal is untouched.
DensityMatrix dephase(const DensityMatrix &rho, Dephasing strength);

}  // namespace qlump

#endif
