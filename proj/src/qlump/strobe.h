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

// Exact statistics of stroboscopic measurement records.
//
// A record is a sequence of outcomes X_0, ..., X_n observed at epochs
// 0, tau, ..., n*tau, with unitary evolution U = exp(-i H tau) between
// consecutive measurements. Three measurement schemes are supported:
//
//   ideal      rank-1 projectors Pi_x; outcomes are basis indices.
//   classical  von Neumann detection of mesostates; the state is fully
//              decohered inside the detected block.
//   quantum    Lueders detection of mesostates; the block projector keeps
//              intra-block coherence.
//
// Joint probabilities are the trace of the unnormalized state obtained by
// alternating collapses and unitary steps. The difference between the
// quantum and classical probabilities of a record is its detectable
// coherence Q_n.

#ifndef QLUMP_STROBE_H
#define QLUMP_STROBE_H

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlump/linalg.h"
#include "qlump/qstate.h"
#include "qlump/rng.h"
#include "qlump/tolerances.h"

namespace qlump {

enum class Scheme { ideal, classical, quantum };

std::string_view scheme_name(Scheme scheme);
/// Accepts "ideal", "classical" (alias "von-neumann") and "quantum" (alias "lueders").
Scheme parse_scheme(std::string_view name);

/// Outcomes at epochs 0, 1, ..., n. Items are block indices into the
/// governing partition; for the ideal scheme they are basis indices.
struct OutcomeSequence {
    std::vector<std::size_t> items;

    std::size_t steps() const {
        return items.size() - 1;
    }
    static OutcomeSequence from_labels(const MesostatePartition &part, std::span<const std::string> labels);
    std::vector<std::string> labels(const MesostatePartition &part) const;
    std::string str(const MesostatePartition &part) const;

    auto operator<=>(const OutcomeSequence &) const = default;
    bool operator==(const OutcomeSequence &) const = default;
};

/// Hamiltonian plus stroboscopic period. Caches the eigensystem and U(tau).
class StroboscopicProtocol {
   public:
    StroboscopicProtocol(const ComplexMatrix &hamiltonian, double tau, const Tolerances &tol = {});

    double tau() const {
        return tau_;
    }
    std::size_t dim() const {
        return step_.dim();
    }
    const EigenSystem &eigen() const {
        return eigen_;
    }
    const ComplexMatrix &step() const {
        return step_;
    }
    const Tolerances &tolerances() const {
        return tol_;
    }
    /// U(steps * tau), computed spectrally.
    ComplexMatrix evolution(std::size_t steps) const;

   private:
    double tau_;
    EigenSystem eigen_;
    ComplexMatrix step_;
    Tolerances tol_;
};

/// Real matrix of transition probabilities T(x, y) = p(x at next epoch | y),
/// column-stochastic: column y sums to one.
struct TransitionMatrix {
    std::size_t dim;
    double tau;
    std::vector<double> entries;  // row-major, row = destination

    double operator()(std::size_t destination, std::size_t source) const {
        return entries[destination * dim + source];
    }
    double &operator()(std::size_t destination, std::size_t source) {
        return entries[destination * dim + source];
    }
};

/// T_x^y = |<x|U(tau)|y>|^2.
TransitionMatrix transition_matrix(const ComplexMatrix &hamiltonian, double tau, const Tolerances &tol = {});
TransitionMatrix transition_matrix(const StroboscopicProtocol &protocol);

/// Throws CapExceeded when exact enumeration over `blocks` outcomes at
/// n + 1 epochs in dimension `dim` is outside the supported range.
void check_enumeration_caps(std::size_t dim, std::size_t steps, std::size_t blocks = 1);

/// Joint probability of ideal outcomes (basis indices) via sequential
/// collapse.
double joint_ideal(const DensityMatrix &rho0, const StroboscopicProtocol &protocol, const OutcomeSequence &seq);
/// The same probability through the Markov factorization p(x_0) prod T.
double joint_ideal_factorized(
    const DensityMatrix &rho0, const TransitionMatrix &transitions, const OutcomeSequence &seq);

/// Classically lumped probability, by composing von Neumann collapses.
double joint_classical(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part);
/// Classically lumped probability as the sum of ideal joint probabilities
/// over every compatible microstate record.
double joint_classical_by_paths(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part);

/// Quantum-lumped probability, by composing Lueders collapses.
double joint_quantum(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part);

/// Dispatches on the scheme. For Scheme::ideal the partition is ignored and
/// items are basis indices.
double joint_probability(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part,
    Scheme scheme);

/// Q_n evaluated along two independent routes.
struct DetectableCoherence {
    /// joint_quantum - joint_classical.
    double by_difference;
    /// Sum over pairs of compatible microstate paths (x_k), (y_k) with
    /// x_n = y_n, excluding x = y, of
    /// <x_0|rho0|y_0> prod_k <x_k|U|x_{k-1}> <y_{k-1}|U^dagger|y_k>.
    Complex by_path_pairs;

    double value() const {
        return by_difference;
    }
    double discrepancy() const;
};

DetectableCoherence detectable_coherence(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part);

/// Only the path-pair route.
Complex coherence_path_pair_sum(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const OutcomeSequence &seq,
    const MesostatePartition &part);

struct LumpabilityWitness {
    std::size_t destination_block;
    std::size_t source_block;
    /// Two sources in source_block whose block sums differ the most.
    std::size_t source;
    std::size_t other_source;
};

struct LumpabilityReport {
    bool lumpable;
    /// Block-level transition matrix, present when lumpable.
    std::optional<TransitionMatrix> lumped;
    /// max over (X, Y, y, y') of |sum_{x in X} T(x, y) - sum_{x in X} T(x, y')|.
    double max_violation;
    /// Present when not lumpable.
    std::optional<LumpabilityWitness> witness;
};

LumpabilityReport check_lumpability(
    const TransitionMatrix &transitions, const MesostatePartition &part, double tol = Tolerances{}.lumpability);

/// Exact table over every outcome record of n + 1 epochs.
struct LumpedDistribution {
    Scheme scheme;
    /// Singletons for the ideal scheme.
    MesostatePartition partition;
    std::size_t steps;
    std::map<OutcomeSequence, double> table;

    double total() const;
    /// Throws IndexOutOfRange for a record of the wrong shape.
    double at(const OutcomeSequence &seq) const;
};

LumpedDistribution joint_distribution(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const MesostatePartition &part,
    std::size_t steps,
    Scheme scheme);

/// Distribution of records measured only at the given (strictly increasing)
/// epochs; evolution across a gap of m epochs is U(m * tau).
LumpedDistribution joint_distribution_at_epochs(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    const MesostatePartition &part,
    std::span<const std::size_t> epochs,
    Scheme scheme);

/// max over shortened records of |p_{n-1}(record without X_k) - sum_{X_k} p_n|
/// where p_{n-1} is recomputed with the measurement at epoch k omitted.
/// Always 0 for k = n. Throws IndexOutOfRange for k > n.
double kolmogorov_check(
    const LumpedDistribution &dist,
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t k);

/// One measurement record of n + 1 outcomes. At every epoch the outcome is
/// drawn by inverse CDF over the block order from the conditional branch
/// probabilities, the scheme's collapse is applied and the state
/// renormalized. Branches below the zero-branch threshold are never drawn.
OutcomeSequence sample_trajectory(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t steps,
    Scheme scheme,
    const MesostatePartition &part,
    CounterRng &rng);
OutcomeSequence sample_trajectory(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t steps,
    Scheme scheme,
    const MesostatePartition &part,
    uint64_t seed);

/// `count` records; record j draws from CounterRng(seed).split(j).
std::vector<OutcomeSequence> sample_trajectories(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t steps,
    Scheme scheme,
    const MesostatePartition &part,
    uint64_t seed,
    std::size_t count);

}  // namespace qlump

#endif
