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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "qlump/errors.h"
#include "qlump/witness.h"
#include "test_support.h"

namespace qlump {
namespace {

using std::numbers::pi;
using testing::Rng;

// Entries outside the block of `label` (in either index) must vanish.
double outside_block(const ComplexMatrix &m, const MesostatePartition &part, std::string_view label) {
    std::size_t block = part.index_of(label);
    double worst = 0;
    for (std::size_t r = 0; r < m.dim(); r++) {
        for (std::size_t c = 0; c < m.dim(); c++) {
            if (part.block_of(r) != block || part.block_of(c) != block) {
                worst = std::max(worst, std::abs(m(r, c)));
            }
        }
    }
    return worst;
}

ComplexMatrix diagonal_part(const ComplexMatrix &m) {
    ComplexMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); i++) {
        out(i, i) = m(i, i);
    }
    return out;
}

TEST(PureState, BasisVector) {
    std::vector<Complex> e0 = {1, 0, 0};
    auto rho = pure_state(e0);
    EXPECT_EQ(rho(0, 0), Complex(1));
    for (std::size_t r = 0; r < 3; r++) {
        for (std::size_t c = 0; c < 3; c++) {
            if (r != 0 || c != 0) {
                EXPECT_EQ(rho(r, c), Complex(0));
            }
        }
    }
}

TEST(PureState, ThetaPreparationHasUnitTrace) {
    for (double theta : {0.0, 0.3, pi / 4, 1.0, 2.5, pi}) {
        std::vector<Complex> amps = {1, 0, std::cos(theta), 0, std::sin(theta), 0};
        EXPECT_NEAR(pure_state(amps).trace(), 1, 1e-15);
    }
}

TEST(PureState, ThetaZeroDiagonal) {
    auto rho = theta_preparation(6, 0);
    std::vector<double> expected = {0.5, 0, 0.5, 0, 0, 0};
    for (std::size_t i = 0; i < 6; i++) {
        EXPECT_NEAR(rho(i, i).real(), expected[i], 1e-15);
    }
}

TEST(PureState, ZeroVectorRejected) {
    std::vector<Complex> zero(4);
    EXPECT_THROW(pure_state(zero), ZeroVector);
}

TEST(DensityMatrix, ValidationRejectsBadInput) {
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::from_rows({{1, 1}, {0, 0}})), InvalidState);
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::from_rows({{0.5, 0}, {0, 0.4}})), InvalidState);
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::from_rows({{1.5, 0}, {0, -0.5}})), InvalidState);
    EXPECT_NO_THROW(DensityMatrix::from_matrix(ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})));
}

TEST(Partition, ParseAndQuery) {
    auto part = MesostatePartition::parse("A:0,2,4;B:1,3,5");
    EXPECT_EQ(part.dim(), 6u);
    EXPECT_EQ(part.size(), 2u);
    EXPECT_EQ(part.index_of("B"), 1u);
    EXPECT_EQ(part.block_of(4), 0u);
    EXPECT_EQ(part, MesostatePartition::parity(6));
    EXPECT_EQ(MesostatePartition::parse(part.str()), part);
}

TEST(Partition, InvalidInputs) {
    EXPECT_THROW(MesostatePartition::parse("A:0,1;B:1,2"), InvalidPartition);  // overlap
    EXPECT_THROW(MesostatePartition::parse("A:0,1;B:3", 4), InvalidPartition);  // gap
    EXPECT_THROW(MesostatePartition::parse("A:0;A:1"), InvalidPartition);  // duplicate label
    EXPECT_THROW(MesostatePartition::parse("A:"), InvalidPartition);
    EXPECT_THROW(MesostatePartition::parse("A:0,x"), InvalidPartition);
    EXPECT_THROW(MesostatePartition::parity(4).index_of("C"), UnknownLabel);
    EXPECT_THROW(MesostatePartition::parity(4).block_of(4), IndexOutOfRange);
}

TEST(Partition, Singletons) {
    auto part = MesostatePartition::singletons(3);
    EXPECT_TRUE(part.is_singletons());
    EXPECT_EQ(part.block(2).label, "2");
    EXPECT_FALSE(MesostatePartition::parity(4).is_singletons());
}

TEST(ProjectorTest, IdempotentHermitianWithExpectedTrace) {
    auto part = MesostatePartition::parse("A:0,3;B:1;C:2,4,5");
    for (const auto &block : part.blocks()) {
        auto p = Projector::block(part, block.label);
        EXPECT_LE(max_abs_diff(p.mat * p.mat, p.mat), 1e-12);
        EXPECT_EQ(p.mat, adjoint(p.mat));
        EXPECT_EQ(trace(p.mat).real(), static_cast<double>(block.members.size()));
    }
    auto r = Projector::rank1(6, 4);
    EXPECT_EQ(trace(r.mat), Complex(1));
    EXPECT_EQ(r.mat * r.mat, r.mat);
}

TEST(IdealCollapse, Examples) {
    auto rho = basis_state(3, 0);
    auto branch = ideal_collapse(rho, 0);
    EXPECT_EQ(branch.prob, 1);
    EXPECT_EQ(branch.post.mat(), rho.mat());

    auto mixed = maximally_mixed(5);
    for (std::size_t x = 0; x < 5; x++) {
        EXPECT_NEAR(ideal_collapse(mixed, x).prob, 0.2, 1e-15);
    }

    auto psi = theta_preparation(6, pi / 4);
    EXPECT_NEAR(ideal_collapse(psi, 2).prob, 0.25, 1e-15);
    EXPECT_THROW(ideal_collapse(psi, 6), IndexOutOfRange);
}

TEST(IdealCollapse, ZeroBranchIsFlaggedAndCannotBeConditioned) {
    auto branch = ideal_collapse(basis_state(3, 0), 1);
    EXPECT_TRUE(branch.zero_branch);
    EXPECT_EQ(branch.post.mat(), ComplexMatrix(3));
    EXPECT_THROW(condition(branch), ZeroProbabilityBranch);
}

TEST(VonNeumannCollapse, DiagonalStateRestrictsToBlock) {
    std::vector<double> w = {0.1, 0.2, 0.3, 0.4};
    auto rho = diagonal_state(w);
    auto part = MesostatePartition::parity(4);
    auto branch = von_neumann_collapse(rho, part, "A");
    EXPECT_NEAR(branch.prob, 0.4, 1e-15);
    EXPECT_NEAR(branch.post(0, 0).real(), 0.1, 1e-15);
    EXPECT_NEAR(branch.post(2, 2).real(), 0.3, 1e-15);
    EXPECT_EQ(branch.post(1, 1), Complex(0));
}

TEST(VonNeumannCollapse, CoherentStateLosesOffDiagonals) {
    std::vector<Complex> amps = {1, 0, 1, 0};
    auto branch = von_neumann_collapse(pure_state(amps), MesostatePartition::parity(4), "A");
    EXPECT_NEAR(branch.prob, 1, 1e-15);
    auto expected = ComplexMatrix::diagonal(std::vector<Complex>{0.5, 0, 0.5, 0});
    EXPECT_LE(max_abs_diff(branch.post.mat(), expected), 1e-15);
}

TEST(LuedersCollapse, CoherentStateKeepsIntraBlockCoherence) {
    std::vector<Complex> amps = {1, 0, 1, 0};
    auto rho = pure_state(amps);
    auto part = MesostatePartition::parity(4);
    auto q = lueders_collapse(rho, part, "A");
    auto c = von_neumann_collapse(rho, part, "A");
    EXPECT_NEAR(q.post(0, 2).real(), 0.5, 1e-15);
    EXPECT_NE(q.post.mat(), c.post.mat());
}

TEST(LuedersCollapse, SupportInsideBlockIsUntouched) {
    auto part = MesostatePartition::parity(6);
    std::vector<Complex> amps = {1, 0, Complex(0.5, -0.2), 0, 0.3, 0};
    auto rho = pure_state(amps);
    auto branch = lueders_collapse(rho, part, "A");
    EXPECT_NEAR(branch.prob, rho.trace(), 1e-15);
    EXPECT_LE(max_abs_diff(branch.post.mat(), rho.mat()), 1e-15);
}

TEST(Collapse, UnknownLabel) {
    auto rho = maximally_mixed(4);
    auto part = MesostatePartition::parity(4);
    EXPECT_THROW(von_neumann_collapse(rho, part, "Z"), UnknownLabel);
    EXPECT_THROW(lueders_collapse(rho, part, "Z"), UnknownLabel);
}

TEST(Collapse, RandomStateProperties) {
    Rng rng(1234);
    for (int trial = 0; trial < 40; trial++) {
        std::size_t dim = 3 + trial % 6;
        auto part = testing::random_partition(dim, 2 + trial % 2, rng);
        auto rho = trial % 2 ? testing::random_pure(dim, rng) : testing::random_density(dim, rng);
        double total_c = 0;
        double total_q = 0;
        for (const auto &block : part.blocks()) {
            auto c = von_neumann_collapse(rho, part, block.label);
            auto q = lueders_collapse(rho, part, block.label);
            total_c += c.prob;
            total_q += q.prob;
            // Single measurement: probabilities coincide.
            EXPECT_NEAR(c.prob, q.prob, 1e-12);
            EXPECT_NEAR(c.post.trace(), c.prob, 1e-12);
            // Block structure.
            EXPECT_LE(outside_block(q.post.mat(), part, block.label), 1e-12);
            EXPECT_LE(max_abs_diff(c.post.mat(), diagonal_part(c.post.mat())), 0);
            // Deleting the Lueders off-diagonals gives the von Neumann branch.
            EXPECT_LE(max_abs_diff(diagonal_part(q.post.mat()), c.post.mat()), 1e-12);
            // Idempotence on the branch.
            auto c2 = von_neumann_collapse(c.post, part, block.label);
            auto q2 = lueders_collapse(q.post, part, block.label);
            EXPECT_NEAR(c2.prob, c.post.trace(), 1e-12);
            EXPECT_NEAR(q2.prob, q.post.trace(), 1e-12);
            EXPECT_LE(max_abs_diff(c2.post.mat(), c.post.mat()), 1e-12);
            EXPECT_LE(max_abs_diff(q2.post.mat(), q.post.mat()), 1e-12);
        }
        EXPECT_NEAR(total_c, 1, 1e-10);
        EXPECT_NEAR(total_q, 1, 1e-10);
    }
}

TEST(Collapse, ConditionRenormalizes) {
    Rng rng(77);
    auto rho = testing::random_density(4, rng);
    auto branch = lueders_collapse(rho, MesostatePartition::parity(4), "B");
    auto state = condition(branch);
    EXPECT_TRUE(state.normalized());
    EXPECT_NEAR(state.trace(), 1, 1e-12);
    EXPECT_NO_THROW(state.check_invariants());
}

TEST(Dephase, Limits) {
    Rng rng(99);
    auto rho = testing::random_density(5, rng);
    EXPECT_EQ(dephase(rho, Dephasing::finite(0)).mat(), rho.mat());
    EXPECT_EQ(dephase(rho, Dephasing::complete()).mat(), diagonal_part(rho.mat()));
    EXPECT_TRUE(Dephasing::finite(std::numeric_limits<double>::infinity()).is_complete());
    auto half = dephase(rho, Dephasing::finite(0.5));
    EXPECT_NEAR(std::abs(half(0, 3) - rho(0, 3) * std::exp(-0.5)), 0, 1e-15);
    EXPECT_EQ(half(2, 2), rho(2, 2));
}

TEST(Dephase, NegativeOrNanRejected) {
    EXPECT_THROW(Dephasing::finite(-1e-3), NegativeGamma);
    EXPECT_THROW(Dephasing::finite(std::nan("")), NegativeGamma);
}

TEST(Dephase, PreservesStateInvariants) {
    Rng rng(1001);
    for (int trial = 0; trial < 20; trial++) {
        auto rho = testing::random_density(6, rng);
        auto out = dephase(rho, Dephasing::finite(testing::uniform(rng, 0, 4)));
        EXPECT_EQ(trace(out.mat()), trace(rho.mat()));
        EXPECT_EQ(hermiticity_defect(out.mat()), 0);
        EXPECT_NO_THROW(out.check_invariants());
    }
}

TEST(Dephase, CompleteThenLuedersEqualsVonNeumann) {
    Rng rng(2002);
    for (int trial = 0; trial < 50; trial++) {
        std::size_t dim = 4 + trial % 5;
        auto part = testing::random_partition(dim, 2, rng);
        auto rho = testing::random_density(dim, rng);
        for (const auto &block : part.blocks()) {
            auto q = lueders_collapse(dephase(rho, Dephasing::complete()), part, block.label);
            auto c = von_neumann_collapse(rho, part, block.label);
            EXPECT_NEAR(q.prob, c.prob, 1e-12);
            EXPECT_LE(max_abs_diff(q.post.mat(), c.post.mat()), 1e-12);
        }
    }
}

}  // namespace
}  // namespace qlump
