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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "qlump/errors.h"
#include "qlump/models.h"
#include "test_support.h"

namespace qlump {
namespace {

using std::numbers::pi;
using testing::all_records;
using testing::Rng;

TEST(SchemeNames, ParseAndAliases) {
    EXPECT_EQ(parse_scheme("ideal"), Scheme::ideal);
    EXPECT_EQ(parse_scheme("von-neumann"), Scheme::classical);
    EXPECT_EQ(parse_scheme("lueders"), Scheme::quantum);
    for (auto s : {Scheme::ideal, Scheme::classical, Scheme::quantum}) {
        EXPECT_EQ(parse_scheme(scheme_name(s)), s);
    }
    EXPECT_THROW(parse_scheme("weak"), Error);
}

TEST(OutcomeSequenceTest, LabelRoundTrip) {
    auto part = MesostatePartition::parity(4);
    std::vector<std::string> labels = {"B", "A", "A"};
    auto seq = OutcomeSequence::from_labels(part, labels);
    EXPECT_EQ(seq.items, (std::vector<std::size_t>{1, 0, 0}));
    EXPECT_EQ(seq.steps(), 2u);
    EXPECT_EQ(seq.labels(part), labels);
    std::vector<std::string> bad = {"A", "Q"};
    EXPECT_THROW(OutcomeSequence::from_labels(part, bad), UnknownLabel);
}

TEST(TransitionMatrixTest, ZeroTimeIsIdentity) {
    Rng rng(1);
    auto t = transition_matrix(testing::random_hermitian(5, rng), 0);
    for (std::size_t x = 0; x < 5; x++) {
        for (std::size_t y = 0; y < 5; y++) {
            EXPECT_NEAR(t(x, y), x == y ? 1 : 0, 1e-14);
        }
    }
}

TEST(TransitionMatrixTest, RingMatchesSpectralDoubleSum) {
    const std::size_t sites = 6;
    auto h = ring_hamiltonian(sites).hamiltonian;
    for (double tau : {0.3, 1.1, 2.9}) {
        auto t = transition_matrix(h, tau);
        for (std::size_t x = 0; x < sites; x++) {
            for (std::size_t y = 0; y < sites; y++) {
                Complex acc = 0;
                for (std::size_t k = 0; k < sites; k++) {
                    for (std::size_t l = 0; l < sites; l++) {
                        double phase = -(ring_eigenvalue(sites, k) - ring_eigenvalue(sites, l)) * tau -
                                       2 * pi * (double(k) - double(l)) * (double(x) - double(y)) / double(sites);
                        acc += std::polar(1.0, phase);
                    }
                }
                EXPECT_NEAR(t(x, y), acc.real() / double(sites * sites), 1e-10);
            }
        }
    }
}

TEST(TransitionMatrixTest, RingFourMagicTimeForbidsParityChange) {
    auto t = transition_matrix(ring_hamiltonian(4).hamiltonian, pi / 2);
    for (std::size_t x = 0; x < 4; x++) {
        for (std::size_t y = 0; y < 4; y++) {
            if ((x + y) % 2 == 1) {
                EXPECT_NEAR(t(x, y), 0, 1e-12);
            }
        }
    }
}

TEST(TransitionMatrixTest, DoublyStochastic) {
    Rng rng(2);
    for (int trial = 0; trial < 10; trial++) {
        auto t = transition_matrix(testing::random_hermitian(7, rng), testing::uniform(rng, 0, 10));
        for (std::size_t i = 0; i < 7; i++) {
            double row = 0;
            double col = 0;
            for (std::size_t j = 0; j < 7; j++) {
                row += t(i, j);
                col += t(j, i);
                EXPECT_GE(t(i, j), 0);
                EXPECT_LE(t(i, j), 1 + 1e-12);
            }
            EXPECT_NEAR(row, 1, 1e-10);
            EXPECT_NEAR(col, 1, 1e-10);
        }
    }
}

TEST(JointIdeal, SingleEpochIsBornRule) {
    Rng rng(3);
    auto rho = testing::random_density(5, rng);
    StroboscopicProtocol protocol(testing::random_hermitian(5, rng), 0.4);
    for (std::size_t x = 0; x < 5; x++) {
        EXPECT_NEAR(joint_ideal(rho, protocol, {{x}}), rho(x, x).real(), 1e-15);
    }
}

TEST(JointIdeal, MaximallyMixedFactorizes) {
    Rng rng(4);
    StroboscopicProtocol protocol(testing::random_hermitian(4, rng), 0.9);
    auto t = transition_matrix(protocol);
    auto rho = maximally_mixed(4);
    for (const auto &seq : all_records(4, 3)) {
        double expected = 0.25;
        for (std::size_t k = 1; k < seq.items.size(); k++) {
            expected *= t(seq.items[k], seq.items[k - 1]);
        }
        EXPECT_NEAR(joint_ideal(rho, protocol, seq), expected, 1e-12);
    }
}

TEST(JointIdeal, MarkovFactorizationAndCompleteness) {
    Rng rng(5);
    for (int trial = 0; trial < 10; trial++) {
        std::size_t dim = 3 + trial % 3;
        std::size_t steps = trial % 4;
        auto rho = testing::random_density(dim, rng);
        StroboscopicProtocol protocol(testing::random_hermitian(dim, rng), testing::uniform(rng, 0.1, 3));
        auto t = transition_matrix(protocol);
        double total = 0;
        for (const auto &seq : all_records(dim, steps)) {
            double p = joint_ideal(rho, protocol, seq);
            EXPECT_NEAR(p, joint_ideal_factorized(rho, t, seq), 1e-12);
            total += p;
        }
        EXPECT_NEAR(total, 1, 1e-10);
    }
}

TEST(JointIdeal, IndexOutOfRange) {
    StroboscopicProtocol protocol(ring_hamiltonian(4).hamiltonian, 0.3);
    EXPECT_THROW(joint_ideal(maximally_mixed(4), protocol, {{0, 4}}), IndexOutOfRange);
    EXPECT_THROW(joint_ideal(maximally_mixed(4), protocol, {{}}), IndexOutOfRange);
}

TEST(JointClassical, SingleEpochSumsBornProbabilities) {
    Rng rng(6);
    auto rho = testing::random_density(6, rng);
    auto part = MesostatePartition::parity(6);
    StroboscopicProtocol protocol(ring_hamiltonian(6).hamiltonian, 0.5);
    EXPECT_NEAR(joint_classical(rho, protocol, {{0}}, part), (rho(0, 0) + rho(2, 2) + rho(4, 4)).real(), 1e-15);
}

TEST(JointClassical, RingFourHopMatchesClosedForm) {
    auto part = MesostatePartition::parity(4);
    auto rho = diagonal_state(std::vector<double>{0.5, 0, 0.5, 0});
    for (double tau : {0.2, 0.7, 1.3}) {
        StroboscopicProtocol protocol(ring_hamiltonian(4).hamiltonian, tau);
        OutcomeSequence hop{{0, 1}};
        double closed = lumped_transition_ab(4, tau);
        EXPECT_NEAR(joint_classical(rho, protocol, hop, part), closed, 1e-12);
        EXPECT_NEAR(joint_classical_by_paths(rho, protocol, hop, part), closed, 1e-12);
        EXPECT_NEAR(closed, std::pow(std::sin(2 * tau), 2) / 2, 1e-12);
    }
}

TEST(JointClassical, ChannelAndPathRoutesAgree) {
    Rng rng(7);
    for (int trial = 0; trial < 10; trial++) {
        std::size_t dim = 4 + trial % 4;
        auto part = testing::random_partition(dim, 2 + trial % 2, rng);
        auto rho = testing::random_density(dim, rng);
        StroboscopicProtocol protocol(testing::random_hermitian(dim, rng), testing::uniform(rng, 0.1, 3));
        for (const auto &seq : all_records(part.size(), 2)) {
            EXPECT_NEAR(joint_classical(rho, protocol, seq, part), joint_classical_by_paths(rho, protocol, seq, part),
                        1e-12);
        }
    }
}

TEST(JointClassical, MarginalizingLastOutcomeDropsIt) {
    Rng rng(8);
    auto part = MesostatePartition::parse("A:0,1;B:2;C:3,4");
    auto rho = testing::random_density(5, rng);
    StroboscopicProtocol protocol(testing::random_hermitian(5, rng), 0.8);
    for (auto scheme : {Scheme::classical, Scheme::quantum}) {
        auto longer = joint_distribution(rho, protocol, part, 2, scheme);
        auto shorter = joint_distribution(rho, protocol, part, 1, scheme);
        for (const auto &[seq, p] : shorter.table) {
            double sum = 0;
            for (std::size_t b = 0; b < part.size(); b++) {
                auto ext = seq;
                ext.items.push_back(b);
                sum += longer.at(ext);
            }
            EXPECT_NEAR(sum, p, 1e-12);
        }
    }
}

TEST(JointQuantum, SingleEpochAgreesWithClassical) {
    Rng rng(9);
    auto part = testing::random_partition(6, 3, rng);
    auto rho = testing::random_pure(6, rng);
    StroboscopicProtocol protocol(testing::random_hermitian(6, rng), 1.0);
    for (std::size_t b = 0; b < part.size(); b++) {
        EXPECT_NEAR(joint_quantum(rho, protocol, {{b}}, part), joint_classical(rho, protocol, {{b}}, part), 1e-12);
    }
}

TEST(JointQuantum, DiagonalStartHasNoOneStepCoherence) {
    Rng rng(10);
    auto part = MesostatePartition::parity(6);
    StroboscopicProtocol protocol(testing::random_hermitian(6, rng), 0.77);
    for (const auto &seq : all_records(2, 1)) {
        auto q = detectable_coherence(maximally_mixed(6), protocol, seq, part);
        EXPECT_NEAR(q.value(), 0, 1e-12);
        EXPECT_NEAR(std::abs(q.by_path_pairs), 0, 1e-12);
    }
    // Evolution rebuilds coherence inside a block before the second
    // collapse, so two steps already see it.
    double worst = 0;
    for (const auto &seq : all_records(2, 2)) {
        worst = std::max(worst, std::abs(detectable_coherence(maximally_mixed(6), protocol, seq, part).value()));
    }
    EXPECT_GT(worst, 1e-6);
}

TEST(JointDistributionTest, NormalizedForEveryScheme) {
    Rng rng(11);
    auto part = MesostatePartition::parse("A:0,2;B:1,3,4");
    auto rho = testing::random_density(5, rng);
    StroboscopicProtocol protocol(testing::random_hermitian(5, rng), 1.7);
    for (auto scheme : {Scheme::ideal, Scheme::classical, Scheme::quantum}) {
        for (std::size_t steps = 0; steps <= 3; steps++) {
            auto dist = joint_distribution(rho, protocol, part, steps, scheme);
            EXPECT_NEAR(dist.total(), 1, 1e-9);
            std::size_t symbols = scheme == Scheme::ideal ? 5 : 2;
            EXPECT_EQ(dist.table.size(), static_cast<std::size_t>(std::pow(symbols, steps + 1)));
            for (const auto &[seq, p] : dist.table) {
                EXPECT_GE(p, -1e-12);
                EXPECT_LE(p, 1 + 1e-12);
                EXPECT_NEAR(p, joint_probability(rho, protocol, seq, part, scheme), 1e-12);
            }
        }
    }
}

TEST(JointDistributionTest, IdealUsesSingletonLabels) {
    StroboscopicProtocol protocol(ring_hamiltonian(4).hamiltonian, 0.3);
    auto dist = joint_distribution(basis_state(4, 1), protocol, MesostatePartition::parity(4), 1, Scheme::ideal);
    EXPECT_TRUE(dist.partition.is_singletons());
    EXPECT_EQ(dist.partition.dim(), 4u);
}

TEST(JointDistributionTest, EpochListMatchesConsecutiveEpochs) {
    Rng rng(12);
    auto part = MesostatePartition::parity(6);
    auto rho = testing::random_density(6, rng);
    StroboscopicProtocol protocol(ring_hamiltonian(6).hamiltonian, 0.6);
    std::vector<std::size_t> epochs = {0, 1, 2};
    auto a = joint_distribution_at_epochs(rho, protocol, part, epochs, Scheme::quantum);
    auto b = joint_distribution(rho, protocol, part, 2, Scheme::quantum);
    for (const auto &[seq, p] : a.table) {
        EXPECT_NEAR(p, b.at(seq), 1e-14);
    }
    // A gap of two periods is one period of twice the length.
    std::vector<std::size_t> gapped = {0, 2};
    StroboscopicProtocol doubled(ring_hamiltonian(6).hamiltonian, 1.2);
    auto c = joint_distribution_at_epochs(rho, protocol, part, gapped, Scheme::quantum);
    auto d = joint_distribution(rho, doubled, part, 1, Scheme::quantum);
    for (const auto &[seq, p] : c.table) {
        EXPECT_NEAR(p, d.at(seq), 1e-12);
    }
    std::vector<std::size_t> bad = {1, 1};
    EXPECT_THROW(joint_distribution_at_epochs(rho, protocol, part, bad, Scheme::quantum), IndexOutOfRange);
}

TEST(JointDistributionTest, EnumerationCaps) {
    EXPECT_THROW(check_enumeration_caps(17, 1), CapExceeded);
    EXPECT_THROW(check_enumeration_caps(4, 9), CapExceeded);
    EXPECT_NO_THROW(check_enumeration_caps(16, 8, 2));
    StroboscopicProtocol protocol(ring_hamiltonian(4).hamiltonian, 0.3);
    EXPECT_THROW(joint_distribution(maximally_mixed(4), protocol, MesostatePartition::parity(4), 9, Scheme::quantum),
                 CapExceeded);
}

TEST(DetectableCoherenceTest, RingSixOneStepMatchesClosedForm) {
    Rng rng(13);
    auto part = MesostatePartition::parity(6);
    for (int trial = 0; trial < 10; trial++) {
        double tau = testing::uniform(rng, 0.05, 2 * pi);
        auto rho = trial % 2 ? testing::random_pure(6, rng) : testing::random_density(6, rng);
        StroboscopicProtocol protocol(ring_hamiltonian(6).hamiltonian, tau);
        auto q = detectable_coherence(rho, protocol, {{1, 0}}, part);
        EXPECT_NEAR(q.value(), ring_one_step_coherence(6, tau, rho, "B", "A"), 1e-10);
    }
}

TEST(DetectableCoherenceTest, VanishesAtFirstQuantumMagicTime) {
    Rng rng(14);
    auto part = MesostatePartition::parity(6);
    StroboscopicProtocol protocol(ring_hamiltonian(6).hamiltonian, pi / 3);
    auto rho = testing::random_pure(6, rng);
    for (std::size_t steps = 1; steps <= 3; steps++) {
        for (const auto &seq : all_records(2, steps)) {
            EXPECT_NEAR(detectable_coherence(rho, protocol, seq, part).value(), 0, 1e-10);
        }
    }
}

TEST(DetectableCoherenceTest, DecompositionAndRealness) {
    Rng rng(15);
    for (std::size_t dim : {4u, 6u, 8u}) {
        auto part = testing::random_partition(dim, 2, rng);
        auto rho = testing::random_pure(dim, rng);
        StroboscopicProtocol protocol(testing::random_hermitian(dim, rng), testing::uniform(rng, 0.1, 3));
        for (std::size_t steps = 1; steps <= 3; steps++) {
            for (const auto &seq : all_records(2, steps)) {
                auto q = detectable_coherence(rho, protocol, seq, part);
                EXPECT_NEAR(q.by_path_pairs.real(), q.by_difference, 1e-10);
                EXPECT_NEAR(q.by_path_pairs.imag(), 0, 1e-10);
                EXPECT_LE(q.discrepancy(), 1e-10);
            }
        }
    }
}

TEST(Lumpability, SingletonsAlwaysLumpable) {
    Rng rng(16);
    auto t = transition_matrix(testing::random_hermitian(5, rng), 0.7);
    auto report = check_lumpability(t, MesostatePartition::singletons(5));
    ASSERT_TRUE(report.lumpable);
    EXPECT_EQ(report.max_violation, 0);
    EXPECT_EQ(report.lumped->entries, t.entries);
    EXPECT_FALSE(report.witness.has_value());
}

TEST(Lumpability, RingParityMatchesClosedForm) {
    Rng rng(17);
    auto part = MesostatePartition::parity(6);
    for (int trial = 0; trial < 20; trial++) {
        double tau = testing::uniform(rng, 0, 2 * pi);
        auto report = check_lumpability(transition_matrix(ring_hamiltonian(6).hamiltonian, tau), part);
        ASSERT_TRUE(report.lumpable);
        EXPECT_LT(report.max_violation, 1e-10);
        EXPECT_NEAR((*report.lumped)(1, 0), lumped_transition_ab(6, tau), 1e-10);
        EXPECT_NEAR((*report.lumped)(0, 1), lumped_transition_ab(6, tau), 1e-10);
    }
}

TEST(Lumpability, HaarUnitaryGivesConcreteWitness) {
    Rng rng(18);
    auto u = testing::haar_unitary(4, rng);
    EXPECT_LE(max_abs_diff(adjoint(u) * u, ComplexMatrix::identity(4)), 1e-12);
    TransitionMatrix t{4, 0, std::vector<double>(16)};
    for (std::size_t x = 0; x < 4; x++) {
        for (std::size_t y = 0; y < 4; y++) {
            t(x, y) = std::norm(u(x, y));
        }
    }
    auto part = MesostatePartition::parse("L:0,1;R:2,3");
    auto report = check_lumpability(t, part);
    ASSERT_FALSE(report.lumpable);
    ASSERT_TRUE(report.witness.has_value());
    const auto &w = *report.witness;
    EXPECT_EQ(part.block_of(w.source), w.source_block);
    EXPECT_EQ(part.block_of(w.other_source), w.source_block);
    double s1 = 0;
    double s2 = 0;
    for (std::size_t x : part.block(w.destination_block).members) {
        s1 += t(x, w.source);
        s2 += t(x, w.other_source);
    }
    EXPECT_NEAR(std::abs(s1 - s2), report.max_violation, 1e-15);

    // Brute-force scan over every pair gives the same maximum.
    double worst = 0;
    for (const auto &dest : part.blocks()) {
        for (const auto &src : part.blocks()) {
            for (std::size_t a : src.members) {
                for (std::size_t b : src.members) {
                    double sa = 0;
                    double sb = 0;
                    for (std::size_t x : dest.members) {
                        sa += t(x, a);
                        sb += t(x, b);
                    }
                    worst = std::max(worst, std::abs(sa - sb));
                }
            }
        }
    }
    EXPECT_NEAR(worst, report.max_violation, 1e-15);
}

TEST(Lumpability, LumpableChainFactorizesClassicalProbabilities) {
    Rng rng(19);
    auto part = MesostatePartition::parity(8);
    auto rho = testing::random_density(8, rng);
    StroboscopicProtocol protocol(ring_hamiltonian(8).hamiltonian, 1.3);
    auto report = check_lumpability(transition_matrix(protocol), part);
    ASSERT_TRUE(report.lumpable);
    auto dist = joint_distribution(rho, protocol, part, 3, Scheme::classical);
    for (const auto &[seq, p] : dist.table) {
        double chain = joint_classical(rho, protocol, {{seq.items[0]}}, part);
        for (std::size_t k = 1; k < seq.items.size(); k++) {
            chain *= (*report.lumped)(seq.items[k], seq.items[k - 1]);
        }
        EXPECT_NEAR(p, chain, 3 * 2 * 1e-10);
    }
}

TEST(Kolmogorov, FinalIndexIsExactlyZero) {
    Rng rng(20);
    auto rho = testing::random_density(4, rng);
    StroboscopicProtocol protocol(testing::random_hermitian(4, rng), 0.9);
    auto part = MesostatePartition::parity(4);
    for (auto scheme : {Scheme::ideal, Scheme::classical, Scheme::quantum}) {
        for (std::size_t n = 0; n <= 3; n++) {
            auto dist = joint_distribution(rho, protocol, part, n, scheme);
            EXPECT_EQ(kolmogorov_check(dist, rho, protocol, n), 0.0);
            EXPECT_THROW(kolmogorov_check(dist, rho, protocol, n + 1), IndexOutOfRange);
        }
    }
}

TEST(Kolmogorov, IdealMeasurementViolatesConsistency) {
    StroboscopicProtocol protocol(ring_hamiltonian(4).hamiltonian, 0.7);
    auto rho = basis_state(4, 0);
    auto dist = joint_distribution(rho, protocol, MesostatePartition::parity(4), 2, Scheme::ideal);
    EXPECT_GT(kolmogorov_check(dist, rho, protocol, 1), 1e-3);
}

TEST(Kolmogorov, CommutingDynamicsIsConsistent) {
    Rng rng(21);
    auto h = ComplexMatrix::diagonal(std::vector<Complex>{0.3, -1.2, 2.0, 0.7, 1.1});
    StroboscopicProtocol protocol(h, 0.9);
    auto rho = testing::random_density(5, rng);
    auto part = MesostatePartition::parse("A:0,1;B:2,3,4");
    for (auto scheme : {Scheme::ideal, Scheme::classical, Scheme::quantum}) {
        auto dist = joint_distribution(rho, protocol, part, 2, scheme);
        for (std::size_t k = 0; k <= 2; k++) {
            EXPECT_LE(kolmogorov_check(dist, rho, protocol, k), 1e-14);
        }
    }
}

TEST(Sampling, DiagonalDynamicsStaysPut) {
    auto h = ComplexMatrix::diagonal(std::vector<Complex>{1, 2, 3});
    StroboscopicProtocol protocol(h, 0.5);
    for (uint64_t seed = 0; seed < 20; seed++) {
        auto seq = sample_trajectory(basis_state(3, 0), protocol, 5, Scheme::ideal, MesostatePartition::singletons(3), seed);
        EXPECT_EQ(seq.items, std::vector<std::size_t>(6, 0));
    }
}

TEST(Sampling, RingFourMagicTimeNeverChangesMesostate) {
    Rng rng(22);
    StroboscopicProtocol protocol(ring_hamiltonian(4).hamiltonian, pi / 2);
    auto part = MesostatePartition::parity(4);
    auto rho = testing::random_density(4, rng);
    for (const auto &seq : sample_trajectories(rho, protocol, 6, Scheme::quantum, part, 5, 200)) {
        for (auto item : seq.items) {
            EXPECT_EQ(item, seq.items.front());
        }
    }
}

TEST(Sampling, DeterministicUnderSeedAndSplitStreams) {
    Rng rng(23);
    auto rho = testing::random_density(6, rng);
    StroboscopicProtocol protocol(ring_hamiltonian(6).hamiltonian, 0.7);
    auto part = MesostatePartition::parity(6);
    auto a = sample_trajectories(rho, protocol, 3, Scheme::classical, part, 42, 300);
    auto b = sample_trajectories(rho, protocol, 3, Scheme::classical, part, 42, 300);
    auto c = sample_trajectories(rho, protocol, 3, Scheme::classical, part, 43, 300);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    // Record j is the trajectory drawn from the j-th split stream.
    CounterRng root(42);
    for (std::size_t j : {0u, 17u, 299u}) {
        auto stream = root.split(j);
        EXPECT_EQ(a[j], sample_trajectory(rho, protocol, 3, Scheme::classical, part, stream));
    }
}

TEST(Sampling, EmpiricalTotalVariationBound) {
    Rng rng(24);
    auto rho = testing::random_pure(4, rng);
    StroboscopicProtocol protocol(ring_hamiltonian(4).hamiltonian, 0.45);
    auto part = MesostatePartition::parity(4);
    const std::size_t samples = 40000;
    for (auto scheme : {Scheme::ideal, Scheme::classical, Scheme::quantum}) {
        auto exact = joint_distribution(rho, protocol, part, 3, scheme);
        std::map<OutcomeSequence, double> freq;
        for (const auto &seq : sample_trajectories(rho, protocol, 3, scheme, part, 7, samples)) {
            freq[seq] += 1.0 / samples;
        }
        double tv = 0;
        for (const auto &[seq, p] : exact.table) {
            tv += std::abs(p - (freq.count(seq) ? freq[seq] : 0.0));
        }
        tv /= 2;
        EXPECT_LE(tv, 4 * std::sqrt(double(exact.table.size()) / samples)) << scheme_name(scheme);
    }
}

}  // namespace
}  // namespace qlump
