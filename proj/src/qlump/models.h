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

#ifndef QLUMP_MODELS_H
#define QLUMP_MODELS_H

#include <cstddef>
#include <map>
#include <string_view>
#include <vector>

#include "qlump/linalg.h"
#include "qlump/qstate.h"

namespace qlump {

/// Tight-binding ring H = -sum_x (|x+1><x| + |x><x+1|) with periodic wrap,
/// observed through the parity mesostates A = even sites, B = odd sites.
struct RingModel {
    std::size_t sites;
    ComplexMatrix hamiltonian;
    MesostatePartition parity_partition;
};

/// Throws OddN unless `sites` is even and at least 2.
RingModel ring_hamiltonian(std::size_t sites);

/// eps_k = -2 cos(2 pi k / N).
double ring_eigenvalue(std::size_t sites, std::size_t k);
/// <x|eps_k> = exp(-2 pi i k x / N) / sqrt(N).
std::vector<Complex> ring_eigenvector(std::size_t sites, std::size_t k);

/// Closed-form probability of an A -> B (equivalently B -> A) hop in one
/// period: 1/2 - 1/(2N) sum_l exp(-4 i cos(2 pi l / N) tau).
/// Throws OddN, NTooSmall (N < 4).
double lumped_transition_ab(std::size_t sites, double tau);

/// Periods in (0, tau_max] where every phase exp(-4 i cos(2 pi l / N) tau)
/// equals one, so lumped hops are invisible. Found from the commensurability
/// of the distinct |cos| values and confirmed numerically.
std::vector<double> lumped_magic_times(std::size_t sites, double tau_max);

/// Phase convention of the coherence coefficients. `derivation` uses
/// exp(2 pi i l d / N), consistent with the one-step closed form;
/// `printed` uses exp(4 pi i l d / N) and exists only for comparison.
enum class PhaseConvention { derivation, printed };

/// c_d(tau) = sum_l (1 - exp(-4 i cos(2 pi l / N) tau)) exp(i phase(l, d))
/// for every even site difference d in {2, ..., N-2} inside a parity block.
std::map<int, Complex> coherence_coefficients(
    std::size_t sites, double tau, PhaseConvention convention = PhaseConvention::derivation);

/// max_d |c_d(tau)|.
double coherence_residual(std::size_t sites, double tau, PhaseConvention convention = PhaseConvention::derivation);

/// Periods in (0, tau_max] where all coherence coefficients vanish at once.
/// Minima of sum_d |c_d|^2 are bracketed on a 1e-3 grid by sign changes of
/// its derivative, refined by bisection to machine precision, and kept
/// when max_d |c_d| < coherence_root. Ascending.
std::vector<double> quantum_magic_times(std::size_t sites, double tau_max);

/// Detectable coherence of the record (from at epoch 0, to at epoch 1) on
/// the ring, from the closed-form double sum over distinct sites y, z of
/// the source block, weighted by the initial coherences <y|rho0|z>.
/// Labels are the parity labels "A" / "B".
double ring_one_step_coherence(
    std::size_t sites, double tau, const DensityMatrix &rho0, std::string_view from, std::string_view to);

/// Two qubits with H = l1 sx (x) sx + l2 I (x) sx in the basis |q1 q2>
/// ordered |00>, |01>, |10>, |11>. Measuring q2 gives the mesostates
/// A = {|00>, |10>} (q2 = 0) and B = {|01>, |11>} (q2 = 1).
struct TwoQubitModel {
    double lambda1;
    double lambda2;
    ComplexMatrix hamiltonian;
    MesostatePartition probe_partition;
};

TwoQubitModel two_qubit_model(double lambda1, double lambda2);

}  // namespace qlump

#endif
