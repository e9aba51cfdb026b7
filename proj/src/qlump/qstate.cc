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

#include "qlump/qstate.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "qlump/errors.h"

namespace qlump {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t end = s.find(sep, start);
        if (end == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, end - start));
        start = end + 1;
    }
}

// Pi_S rho Pi_S for the index set S, or only its diagonal when `keep_coherence`
// is false.
CollapseResult project_onto(
    const DensityMatrix &rho, std::span<const std::size_t> members, bool keep_coherence, const Tolerances &tol) {
    std::size_t n = rho.dim();
    double prob = 0;
    for (std::size_t i : members) {
        prob += rho(i, i).real();
    }
    ComplexMatrix post(n);
    bool zero_branch = prob < tol.zero_branch;
    if (!zero_branch) {
        if (keep_coherence) {
            for (std::size_t i : members) {
                for (std::size_t j : members) {
                    post(i, j) = rho(i, j);
                }
            }
        } else {
            for (std::size_t i : members) {
                post(i, i) = rho(i, i).real();
            }
        }
    }
    return {prob, DensityMatrix::trusted(std::move(post), false), zero_branch};
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix mat, const Tolerances &tol) {
    DensityMatrix rho(std::move(mat), true);
    rho.check_invariants(tol);
    return rho;
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix mat, bool normalized) {
    return DensityMatrix(std::move(mat), normalized);
}

void DensityMatrix::check_invariants(const Tolerances &tol) const {
    double defect = hermiticity_defect(mat_);
    if (!(defect <= tol.state_hermitian)) {
        throw InvalidState("density matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    ComplexMatrix sym = (mat_ + adjoint(mat_)) * Complex{0.5};
    auto eig = hermitian_eig(sym, tol);
    if (eig.eigenvalues.front() < -tol.state_positivity) {
        throw InvalidState("density matrix has eigenvalue " + std::to_string(eig.eigenvalues.front()));
    }
    double tr = trace();
    if (normalized_) {
        if (!(std::abs(tr - 1) <= tol.state_trace)) {
            throw InvalidState("normalized density matrix has trace " + std::to_string(tr));
        }
    } else if (!(tr <= 1 + tol.state_trace)) {
        throw InvalidState("unnormalized density matrix has trace " + std::to_string(tr));
    }
}

DensityMatrix pure_state(std::span<const Complex> amplitudes) {
    double norm2 = 0;
    for (const auto &a : amplitudes) {
        norm2 += std::norm(a);
    }
    if (amplitudes.empty() || norm2 == 0) {
        throw ZeroVector("pure_state needs a non-zero amplitude vector");
    }
    std::size_t n = amplitudes.size();
    ComplexMatrix m(n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            m(r, c) = amplitudes[r] * std::conj(amplitudes[c]) / norm2;
        }
    }
    return DensityMatrix::trusted(std::move(m), true);
}

DensityMatrix diagonal_state(std::span<const double> weights) {
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) {
            throw InvalidState("diagonal weights must be non-negative");
        }
        total += w;
    }
    if (weights.empty() || total == 0) {
        throw ZeroVector("diagonal_state needs a positive total weight");
    }
    ComplexMatrix m(weights.size());
    for (std::size_t k = 0; k < weights.size(); k++) {
        m(k, k) = weights[k] / total;
    }
    return DensityMatrix::trusted(std::move(m), true);
}

DensityMatrix basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw IndexOutOfRange("basis index " + std::to_string(index) + " outside dimension " + std::to_string(dim));
    }
    ComplexMatrix m(dim);
    m(index, index) = 1;
    return DensityMatrix::trusted(std::move(m), true);
}

DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix::trusted(ComplexMatrix::identity(dim) * Complex{1.0 / static_cast<double>(dim)}, true);
}

MesostatePartition::MesostatePartition(std::size_t dim, std::vector<Block> blocks)
    : dim_(dim), blocks_(std::move(blocks)), owner_(dim, std::numeric_limits<std::size_t>::max()) {
    if (dim == 0) {
        throw InvalidPartition("partition dimension must be at least 1");
    }
    for (std::size_t b = 0; b < blocks_.size(); b++) {
        auto &block = blocks_[b];
        if (block.label.empty() || block.label.find_first_of(":;,") != std::string::npos) {
            throw InvalidPartition("invalid mesostate label '" + block.label + "'");
        }
        for (std::size_t prior = 0; prior < b; prior++) {
            if (blocks_[prior].label == block.label) {
                throw InvalidPartition("duplicate mesostate label '" + block.label + "'");
            }
        }
        if (block.members.empty()) {
            throw InvalidPartition("mesostate '" + block.label + "' is empty");
        }
        std::sort(block.members.begin(), block.members.end());
        for (std::size_t m : block.members) {
            if (m >= dim) {
                throw InvalidPartition(
                    "index " + std::to_string(m) + " outside dimension " + std::to_string(dim));
            }
            if (owner_[m] != std::numeric_limits<std::size_t>::max()) {
                throw InvalidPartition("index " + std::to_string(m) + " appears in more than one mesostate");
            }
            owner_[m] = b;
        }
    }
    for (std::size_t k = 0; k < dim; k++) {
        if (owner_[k] == std::numeric_limits<std::size_t>::max()) {
            throw InvalidPartition("index " + std::to_string(k) + " belongs to no mesostate");
        }
    }
}

MesostatePartition MesostatePartition::parse(std::string_view literal, std::size_t dim) {
    std::vector<Block> blocks;
    std::size_t mentioned = 0;
    for (auto piece : split(literal, ';')) {
        piece = trim(piece);
        if (piece.empty()) {
            continue;
        }
        auto colon = piece.find(':');
        if (colon == std::string_view::npos) {
            throw InvalidPartition("expected label:indices, got '" + std::string(piece) + "'");
        }
        Block block{std::string(trim(piece.substr(0, colon))), {}};
        for (auto item : split(piece.substr(colon + 1), ',')) {
            item = trim(item);
            std::size_t value = 0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
            if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
                throw InvalidPartition("bad index '" + std::string(item) + "' in mesostate " + block.label);
            }
            block.members.push_back(value);
            mentioned++;
        }
        blocks.push_back(std::move(block));
    }
    if (blocks.empty()) {
        throw InvalidPartition("empty partition literal");
    }
    return MesostatePartition(dim ? dim : mentioned, std::move(blocks));
}

MesostatePartition MesostatePartition::singletons(std::size_t dim) {
    std::vector<Block> blocks;
    for (std::size_t k = 0; k < dim; k++) {
        blocks.push_back({std::to_string(k), {k}});
    }
    return MesostatePartition(dim, std::move(blocks));
}

MesostatePartition MesostatePartition::parity(std::size_t dim) {
    Block even{"A", {}};
    Block odd{"B", {}};
    for (std::size_t k = 0; k < dim; k++) {
        (k % 2 ? odd : even).members.push_back(k);
    }
    std::vector<Block> blocks{even};
    if (!odd.members.empty()) {
        blocks.push_back(odd);
    }
    return MesostatePartition(dim, std::move(blocks));
}

std::size_t MesostatePartition::index_of(std::string_view label) const {
    for (std::size_t b = 0; b < blocks_.size(); b++) {
        if (blocks_[b].label == label) {
            return b;
        }
    }
    throw UnknownLabel("no mesostate labeled '" + std::string(label) + "'");
}

std::size_t MesostatePartition::block_of(std::size_t site) const {
    if (site >= dim_) {
        throw IndexOutOfRange("basis index " + std::to_string(site) + " outside dimension " + std::to_string(dim_));
    }
    return owner_[site];
}

bool MesostatePartition::is_singletons() const {
    return blocks_.size() == dim_;
}

std::string MesostatePartition::str() const {
    std::string out;
    for (std::size_t b = 0; b < blocks_.size(); b++) {
        out += b ? ";" : "";
        out += blocks_[b].label + ":";
        for (std::size_t k = 0; k < blocks_[b].members.size(); k++) {
            out += (k ? "," : "") + std::to_string(blocks_[b].members[k]);
        }
    }
    return out;
}

bool MesostatePartition::operator==(const MesostatePartition &other) const {
    if (dim_ != other.dim_ || blocks_.size() != other.blocks_.size()) {
        return false;
    }
    for (std::size_t b = 0; b < blocks_.size(); b++) {
        if (blocks_[b].label != other.blocks_[b].label || blocks_[b].members != other.blocks_[b].members) {
            return false;
        }
    }
    return true;
}

Projector Projector::rank1(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw IndexOutOfRange("basis index " + std::to_string(index) + " outside dimension " + std::to_string(dim));
    }
    ComplexMatrix m(dim);
    m(index, index) = 1;
    return {Kind::rank1, index, std::move(m)};
}

Projector Projector::block(const MesostatePartition &part, std::string_view label) {
    std::size_t b = part.index_of(label);
    ComplexMatrix m(part.dim());
    for (std::size_t k : part.block(b).members) {
        m(k, k) = 1;
    }
    return {Kind::block, b, std::move(m)};
}

CollapseResult ideal_collapse(const DensityMatrix &rho, std::size_t x, const Tolerances &tol) {
    if (x >= rho.dim()) {
        throw IndexOutOfRange("basis index " + std::to_string(x) + " outside dimension " + std::to_string(rho.dim()));
    }
    const std::size_t members[] = {x};
    return project_onto(rho, members, true, tol);
}

CollapseResult von_neumann_collapse(
    const DensityMatrix &rho, const MesostatePartition &part, std::size_t block, const Tolerances &tol) {
    if (part.dim() != rho.dim()) {
        throw DimensionMismatch("partition and state dimensions differ");
    }
    if (block >= part.size()) {
        throw UnknownLabel("no mesostate with index " + std::to_string(block));
    }
    return project_onto(rho, part.block(block).members, false, tol);
}

CollapseResult von_neumann_collapse(
    const DensityMatrix &rho, const MesostatePartition &part, std::string_view label, const Tolerances &tol) {
    return von_neumann_collapse(rho, part, part.index_of(label), tol);
}

CollapseResult lueders_collapse(
    const DensityMatrix &rho, const MesostatePartition &part, std::size_t block, const Tolerances &tol) {
    if (part.dim() != rho.dim()) {
        throw DimensionMismatch("partition and state dimensions differ");
    }
    if (block >= part.size()) {
        throw UnknownLabel("no mesostate with index " + std::to_string(block));
    }
    return project_onto(rho, part.block(block).members, true, tol);
}

CollapseResult lueders_collapse(
    const DensityMatrix &rho, const MesostatePartition &part, std::string_view label, const Tolerances &tol) {
    return lueders_collapse(rho, part, part.index_of(label), tol);
}

DensityMatrix condition(const CollapseResult &branch) {
    if (branch.zero_branch) {
        throw ZeroProbabilityBranch("cannot condition on an outcome of probability " + std::to_string(branch.prob));
    }
    return DensityMatrix::trusted(branch.post.mat() * Complex{1.0 / branch.prob}, true);
}

Dephasing Dephasing::finite(double gamma) {
    if (!(gamma >= 0)) {
        throw NegativeGamma("dephasing strength must be >= 0, got " + std::to_string(gamma));
    }
    if (std::isinf(gamma)) {
        return complete();
    }
    return Dephasing(gamma, false);
}

DensityMatrix dephase(const DensityMatrix &rho, Dephasing strength) {
    double factor = strength.is_complete() ? 0.0 : std::exp(-strength.gamma());
    ComplexMatrix m = rho.mat();
    for (std::size_t r = 0; r < m.dim(); r++) {
        for (std::size_t c = 0; c < m.dim(); c++) {
            if (r != c) {
                m(r, c) *= factor;
            }
        }
    }
    return DensityMatrix::trusted(std::move(m), rho.normalized());
}

}  // namespace qlump
