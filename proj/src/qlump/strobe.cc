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

#include "qlump/strobe.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qlump/errors.h"
#include "qlump/parallel.h"

namespace qlump {

namespace {

// Largest outcome table and path-pair count enumerated exactly.
constexpr double max_table_size = 16777216.0;    // 2^24
constexpr double max_path_pairs = 4294967296.0;  // 2^32

MesostatePartition partition_for(Scheme scheme, const MesostatePartition &part, std::size_t dim) {
    if (scheme == Scheme::ideal) {
        return MesostatePartition::singletons(dim);
    }
    if (part.dim() != dim) {
        throw DimensionMismatch(
            "partition dimension " + std::to_string(part.dim()) + " differs from system dimension " +
            std::to_string(dim));
    }
    return part;
}

void require_state_dim(const DensityMatrix &rho0, const StroboscopicProtocol &protocol) {
    if (rho0.dim() != protocol.dim()) {
        throw DimensionMismatch(
            "state dimension " + std::to_string(rho0.dim()) + " differs from Hamiltonian dimension " +
            std::to_string(protocol.dim()));
    }
}

void require_valid_sequence(const OutcomeSequence &seq, const MesostatePartition &part, Scheme scheme) {
    if (seq.items.empty()) {
        throw IndexOutOfRange("outcome sequence is empty");
    }
    for (std::size_t item : seq.items) {
        if (item >= part.size()) {
            if (scheme == Scheme::ideal) {
                throw IndexOutOfRange("basis index " + std::to_string(item) + " out of range");
            }
            throw UnknownLabel("no mesostate with index " + std::to_string(item));
        }
    }
}

CollapseResult collapse(
    const DensityMatrix &state, const MesostatePartition &part, std::size_t block, Scheme scheme, const Tolerances &tol) {
    switch (scheme) {
        case Scheme::ideal:
            return ideal_collapse(state, part.block(block).members.front(), tol);
        case Scheme::classical:
            return von_neumann_collapse(state, part, block, tol);
        case Scheme::quantum:
            return lueders_collapse(state, part, block, tol);
    }
    throw Error("unknown scheme");
}

DensityMatrix evolve(const ComplexMatrix &u, const DensityMatrix &state) {
    return DensityMatrix::trusted(conjugate(u, state.mat()), false);
}

double sequential_probability(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part,
    Scheme scheme) {
    require_state_dim(rho0, protocol);
    require_valid_sequence(seq, part, scheme);
    check_enumeration_caps(protocol.dim(), seq.steps());
    const auto &tol = protocol.tolerances();
    DensityMatrix state = rho0;
    for (std::size_t k = 0; k < seq.items.size(); k++) {
        if (k > 0) {
            state = evolve(protocol.step(), state);
        }
        auto branch = collapse(state, part, seq.items[k], scheme, tol);
        if (branch.zero_branch) {
            return 0;
        }
        state = std::move(branch.post);
    }
    return state.trace();
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::ideal:
            return "ideal";
        case Scheme::classical:
            return "classical";
        case Scheme::quantum:
            return "quantum";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "ideal") {
        return Scheme::ideal;
    }
    if (name == "classical" || name == "von-neumann") {
        return Scheme::classical;
    }
    if (name == "quantum" || name == "lueders") {
        return Scheme::quantum;
    }
    throw Error("unknown measurement scheme '" + std::string(name) + "'");
}

OutcomeSequence OutcomeSequence::from_labels(const MesostatePartition &part, std::span<const std::string> labels) {
    OutcomeSequence seq;
    for (const auto &label : labels) {
        seq.items.push_back(part.index_of(label));
    }
    return seq;
}

std::vector<std::string> OutcomeSequence::labels(const MesostatePartition &part) const {
    std::vector<std::string> out;
    for (std::size_t item : items) {
        out.push_back(part.block(item).label);
    }
    return out;
}

std::string OutcomeSequence::str(const MesostatePartition &part) const {
    std::string out;
    for (std::size_t k = 0; k < items.size(); k++) {
        out += (k ? "," : "") + part.block(items[k]).label;
    }
    return out;
}

StroboscopicProtocol::StroboscopicProtocol(const ComplexMatrix &hamiltonian, double tau, const Tolerances &tol)
    : tau_(tau), eigen_(hermitian_eig(hamiltonian, tol)), step_(propagator(eigen_, tau)), tol_(tol) {
}

ComplexMatrix StroboscopicProtocol::evolution(std::size_t steps) const {
    return propagator(eigen_, static_cast<double>(steps) * tau_);
}

TransitionMatrix transition_matrix(const StroboscopicProtocol &protocol) {
    const auto &u = protocol.step();
    std::size_t n = u.dim();
    TransitionMatrix t{n, protocol.tau(), std::vector<double>(n * n)};
    for (std::size_t x = 0; x < n; x++) {
        for (std::size_t y = 0; y < n; y++) {
            t(x, y) = std::norm(u(x, y));
        }
    }
    return t;
}

TransitionMatrix transition_matrix(const ComplexMatrix &hamiltonian, double tau, const Tolerances &tol) {
    return transition_matrix(StroboscopicProtocol(hamiltonian, tau, tol));
}

void check_enumeration_caps(std::size_t dim, std::size_t steps, std::size_t blocks) {
    if (dim > max_enumeration_dim) {
        throw CapExceeded(
            "dimension " + std::to_string(dim) + " exceeds the enumeration cap of " +
            std::to_string(max_enumeration_dim));
    }
    if (steps > max_enumeration_steps) {
        throw CapExceeded(
            "n = " + std::to_string(steps) + " exceeds the enumeration cap of " +
            std::to_string(max_enumeration_steps));
    }
    if (std::pow(static_cast<double>(blocks), static_cast<double>(steps + 1)) > max_table_size) {
        throw CapExceeded(
            std::to_string(blocks) + "^" + std::to_string(steps + 1) + " outcome records exceed the table cap");
    }
}

double joint_ideal(const DensityMatrix &rho0, const StroboscopicProtocol &protocol, const OutcomeSequence &seq) {
    auto part = MesostatePartition::singletons(protocol.dim());
    return sequential_probability(rho0, protocol, seq, part, Scheme::ideal);
}

double joint_ideal_factorized(
    const DensityMatrix &rho0, const TransitionMatrix &transitions, const OutcomeSequence &seq) {
    if (rho0.dim() != transitions.dim) {
        throw DimensionMismatch("state and transition matrix dimensions differ");
    }
    require_valid_sequence(seq, MesostatePartition::singletons(rho0.dim()), Scheme::ideal);
    double p = rho0(seq.items[0], seq.items[0]).real();
    for (std::size_t k = 1; k < seq.items.size(); k++) {
        p *= transitions(seq.items[k], seq.items[k - 1]);
    }
    return p;
}

double joint_classical(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part) {
    return sequential_probability(rho0, protocol, seq, partition_for(Scheme::classical, part, protocol.dim()),
                                  Scheme::classical);
}

double joint_classical_by_paths(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part) {
    require_state_dim(rho0, protocol);
    require_valid_sequence(seq, partition_for(Scheme::classical, part, protocol.dim()), Scheme::classical);
    check_enumeration_caps(protocol.dim(), seq.steps());
    const auto &tol = protocol.tolerances();
    std::size_t last = seq.steps();

    std::function<double(const DensityMatrix &, std::size_t)> sum_paths = [&](const DensityMatrix &state,
                                                                               std::size_t k) {
        double total = 0;
        for (std::size_t x : part.block(seq.items[k]).members) {
            auto branch = ideal_collapse(state, x, tol);
            if (branch.zero_branch) {
                continue;
            }
            total += k == last ? branch.post.trace() : sum_paths(evolve(protocol.step(), branch.post), k + 1);
        }
        return total;
    };
    return sum_paths(rho0, 0);
}

double joint_quantum(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part) {
    return sequential_probability(rho0, protocol, seq, partition_for(Scheme::quantum, part, protocol.dim()),
                                  Scheme::quantum);
}

double joint_probability(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part,
    Scheme scheme) {
    switch (scheme) {
        case Scheme::ideal:
            return joint_ideal(rho0, protocol, seq);
        case Scheme::classical:
            return joint_classical(rho0, protocol, seq, part);
        case Scheme::quantum:
            return joint_quantum(rho0, protocol, seq, part);
    }
    throw Error("unknown scheme");
}

double DetectableCoherence::discrepancy() const {
    return std::abs(Complex(by_difference) - by_path_pairs);
}

Complex coherence_path_pair_sum(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part) {
    require_state_dim(rho0, protocol);
    require_valid_sequence(seq, partition_for(Scheme::quantum, part, protocol.dim()), Scheme::quantum);
    check_enumeration_caps(protocol.dim(), seq.steps());
    double pair_count = 1;
    for (std::size_t k = 0; k < seq.items.size(); k++) {
        double size = static_cast<double>(part.block(seq.items[k]).members.size());
        pair_count *= k + 1 < seq.items.size() ? size * size : size;
    }
    if (pair_count > max_path_pairs) {
        throw CapExceeded("path-pair enumeration for this record exceeds the cap");
    }

    const auto &u = protocol.step();
    std::size_t last = seq.steps();
    Complex total = 0;

    // The trace closes the two paths, so the final outcome is shared.
    std::function<void(std::size_t, std::size_t, std::size_t, Complex, bool)> walk =
        [&](std::size_t k, std::size_t x_prev, std::size_t y_prev, Complex weight, bool diagonal) {
            const auto &members = part.block(seq.items[k]).members;
            if (k == last) {
                if (diagonal) {
                    return;
                }
                for (std::size_t x : members) {
                    total += weight * u(x, x_prev) * std::conj(u(x, y_prev));
                }
                return;
            }
            for (std::size_t x : members) {
                Complex wx = weight * u(x, x_prev);
                for (std::size_t y : members) {
                    walk(k + 1, x, y, wx * std::conj(u(y, y_prev)), diagonal && x == y);
                }
            }
        };

    const auto &first = part.block(seq.items[0]).members;
    if (last == 0) {
        return 0;
    }
    for (std::size_t x : first) {
        for (std::size_t y : first) {
            walk(1, x, y, rho0(x, y), x == y);
        }
    }
    return total;
}

DetectableCoherence detectable_coherence(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part) {
    double quantum = joint_quantum(rho0, protocol, seq, part);
    double classical = joint_classical(rho0, protocol, seq, part);
    return {quantum - classical, coherence_path_pair_sum(rho0, protocol, seq, part)};
}

LumpabilityReport check_lumpability(const TransitionMatrix &transitions, const MesostatePartition &part, double tol) {
    if (part.dim() != transitions.dim) {
        throw DimensionMismatch("partition and transition matrix dimensions differ");
    }
    std::size_t blocks = part.size();
    TransitionMatrix lumped{blocks, transitions.tau, std::vector<double>(blocks * blocks)};
    LumpabilityReport report{true, std::nullopt, 0, std::nullopt};
    LumpabilityWitness worst{};

    for (std::size_t dest = 0; dest < blocks; dest++) {
        const auto &targets = part.block(dest).members;
        for (std::size_t src = 0; src < blocks; src++) {
            const auto &sources = part.block(src).members;
            double lo = 0;
            double hi = 0;
            std::size_t lo_source = sources.front();
            std::size_t hi_source = sources.front();
            double mean = 0;
            for (std::size_t i = 0; i < sources.size(); i++) {
                double s = 0;
                for (std::size_t x : targets) {
                    s += transitions(x, sources[i]);
                }
                mean += s;
                if (i == 0 || s < lo) {
                    lo = s;
                    lo_source = sources[i];
                }
                if (i == 0 || s > hi) {
                    hi = s;
                    hi_source = sources[i];
                }
            }
            lumped(dest, src) = mean / static_cast<double>(sources.size());
            if (hi - lo > report.max_violation) {
                report.max_violation = hi - lo;
                worst = {dest, src, lo_source, hi_source};
            }
        }
    }
    report.lumpable = report.max_violation <= tol;
    if (report.lumpable) {
        report.lumped = std::move(lumped);
    } else {
        report.witness = worst;
    }
    return report;
}

double LumpedDistribution::total() const {
    double acc = 0;
    for (const auto &[seq, p] : table) {
        acc += p;
    }
    return acc;
}

double LumpedDistribution::at(const OutcomeSequence &seq) const {
    auto it = table.find(seq);
    if (it == table.end()) {
        throw IndexOutOfRange("record is not part of this distribution");
    }
    return it->second;
}

LumpedDistribution joint_distribution_at_epochs(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const MesostatePartition &part,
    std::span<const std::size_t> epochs,
    Scheme scheme) {
    require_state_dim(rho0, protocol);
    if (epochs.empty()) {
        throw IndexOutOfRange("at least one measurement epoch is required");
    }
    for (std::size_t i = 1; i < epochs.size(); i++) {
        if (epochs[i] <= epochs[i - 1]) {
            throw IndexOutOfRange("measurement epochs must be strictly increasing");
        }
    }
    auto effective = partition_for(scheme, part, protocol.dim());
    std::size_t steps = epochs.size() - 1;
    check_enumeration_caps(protocol.dim(), steps, effective.size());
    const auto &tol = protocol.tolerances();

    std::map<std::size_t, ComplexMatrix> gap_propagators;
    auto propagate = [&](const DensityMatrix &state, std::size_t gap) {
        if (gap == 0) {
            return state;
        }
        if (gap == 1) {
            return evolve(protocol.step(), state);
        }
        auto it = gap_propagators.find(gap);
        if (it == gap_propagators.end()) {
            it = gap_propagators.emplace(gap, protocol.evolution(gap)).first;
        }
        return evolve(it->second, state);
    };

    LumpedDistribution dist{scheme, effective, steps, {}};
    OutcomeSequence prefix;
    std::function<void(const DensityMatrix &, std::size_t)> fill = [&](const DensityMatrix &state, std::size_t i) {
        for (std::size_t b = 0; b < effective.size(); b++) {
            auto branch = collapse(state, effective, b, scheme, tol);
            prefix.items.push_back(b);
            if (i == steps) {
                dist.table.emplace(prefix, branch.zero_branch ? 0.0 : branch.post.trace());
            } else {
                fill(propagate(branch.post, epochs[i + 1] - epochs[i]), i + 1);
            }
            prefix.items.pop_back();
        }
    };
    fill(propagate(rho0, epochs[0]), 0);
    return dist;
}

LumpedDistribution joint_distribution(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const MesostatePartition &part,
    std::size_t steps,
    Scheme scheme) {
    check_enumeration_caps(protocol.dim(), steps);
    std::vector<std::size_t> epochs(steps + 1);
    for (std::size_t k = 0; k <= steps; k++) {
        epochs[k] = k;
    }
    return joint_distribution_at_epochs(rho0, protocol, part, epochs, scheme);
}

double kolmogorov_check(
    const LumpedDistribution &dist,
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t k) {
    std::size_t n = dist.steps;
    if (k > n) {
        throw IndexOutOfRange("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    }
    // Nothing follows the final measurement, so dropping it cannot change
    // the statistics of the earlier ones.
    if (k == n) {
        return 0;
    }
    std::vector<std::size_t> epochs;
    for (std::size_t e = 0; e <= n; e++) {
        if (e != k) {
            epochs.push_back(e);
        }
    }
    auto unmeasured = joint_distribution_at_epochs(rho0, protocol, dist.partition, epochs, dist.scheme);

    double worst = 0;
    for (const auto &[shortened, p] : unmeasured.table) {
        double marginal = 0;
        OutcomeSequence full = shortened;
        full.items.insert(full.items.begin() + static_cast<std::ptrdiff_t>(k), 0);
        for (std::size_t b = 0; b < dist.partition.size(); b++) {
            full.items[k] = b;
            marginal += dist.at(full);
        }
        worst = std::max(worst, std::abs(p - marginal));
    }
    return worst;
}

namespace {

OutcomeSequence sample_with_partition(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t steps,
    Scheme scheme,
    const MesostatePartition &part,
    CounterRng &rng) {
    const auto &tol = protocol.tolerances();
    double tr = rho0.trace();
    DensityMatrix state = rho0.normalized() ? rho0 : DensityMatrix::trusted(rho0.mat() * Complex{1 / tr}, true);
    std::vector<double> probs(part.size());
    OutcomeSequence seq;
    seq.items.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; k++) {
        if (k > 0) {
            state = DensityMatrix::trusted(conjugate(protocol.step(), state.mat()), true);
        }
        double total = 0;
        for (std::size_t b = 0; b < part.size(); b++) {
            double p = 0;
            for (std::size_t i : part.block(b).members) {
                p += state(i, i).real();
            }
            probs[b] = p >= tol.zero_branch ? p : 0.0;
            total += probs[b];
        }
        if (total <= 0) {
            throw ZeroProbabilityBranch("every outcome has vanishing probability");
        }
        double u = rng.next_unit() * total;
        std::size_t chosen = part.size();
        double cumulative = 0;
        for (std::size_t b = 0; b < part.size(); b++) {
            if (probs[b] == 0) {
                continue;
            }
            chosen = b;
            cumulative += probs[b];
            if (u < cumulative) {
                break;
            }
        }
        state = condition(collapse(state, part, chosen, scheme, tol));
        seq.items.push_back(chosen);
    }
    return seq;
}

}  // namespace

OutcomeSequence sample_trajectory(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t steps,
    Scheme scheme,
    const MesostatePartition &part,
    CounterRng &rng) {
    require_state_dim(rho0, protocol);
    return sample_with_partition(rho0, protocol, steps, scheme, partition_for(scheme, part, protocol.dim()), rng);
}

OutcomeSequence sample_trajectory(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t steps,
    Scheme scheme,
    const MesostatePartition &part,
    uint64_t seed) {
    CounterRng rng(seed);
    return sample_trajectory(rho0, protocol, steps, scheme, part, rng);
}

std::vector<OutcomeSequence> sample_trajectories(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t steps,
    Scheme scheme,
    const MesostatePartition &part,
    uint64_t seed,
    std::size_t count) {
    require_state_dim(rho0, protocol);
    auto effective = partition_for(scheme, part, protocol.dim());
    CounterRng root(seed);
    std::vector<OutcomeSequence> out(count);
    parallel_for(count, [&](std::size_t j) {
        CounterRng rng = root.split(j);
        out[j] = sample_with_partition(rho0, protocol, steps, scheme, effective, rng);
    });
    return out;
}

}  // namespace qlump
