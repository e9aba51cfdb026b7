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

// Distinguishability witness for memory in lumped records.
//
// P_m[X] is the marginal of the outcome at epoch m (m = 0 is the first
// measurement). D_n compares two preparations through P_{n-1}:
//
//     D_n = sum_X |P_{n-1}[X](rho0) - P_{n-1}[X](sigma0)|,
//
// so D_1 uses the first outcome and D_2 the second. Note the shift by one.
// A Markovian lumped process can only contract this distance, so
// delta = D_{n+1} - D_n > 0 certifies memory; delta <= 0 proves nothing.

#ifndef QLUMP_WITNESS_H
#define QLUMP_WITNESS_H

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qlump/qstate.h"
#include "qlump/strobe.h"

namespace qlump {

using Marginal = std::map<std::string, double>;

/// Marginal of the outcome at epoch `epoch`, summed out of the full joint
/// distribution of epochs 0..epoch. Labels are basis indices for the ideal
/// scheme. Throws CapExceeded beyond the enumeration caps.
Marginal marginal_last(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t epoch,
    const MesostatePartition &part,
    Scheme scheme);

/// L1 distance. Throws LabelMismatch unless both maps have the same labels.
double kolmogorov_distance(const Marginal &p, const Marginal &q);

struct WitnessResult {
    double tau;
    std::size_t n;
    double d_n;
    double d_next;
    double delta;
};

/// D_n and D_{n+1} from quantum-lumped marginals. Requires n >= 1.
WitnessResult delta_d(
    const DensityMatrix &rho0,
    const DensityMatrix &sigma0,
    const StroboscopicProtocol &protocol,
    std::size_t n,
    const MesostatePartition &part);

/// Preparations used for the (theta, tau) witness map:
/// sqrt(2)|psi_theta> = |0> + cos(theta)|2> + sin(theta)|4>, and the
/// diagonal reference 1/2 |0><0| + 1/4 |2><2| + 1/4 |4><4|.
/// Throw PreparationUnavailable when dim < 5.
DensityMatrix theta_preparation(std::size_t dim, double theta);
DensityMatrix reference_preparation(std::size_t dim);

/// Row-major (theta, tau) grid of delta_d between theta_preparation and
/// reference_preparation. Cells are evaluated in parallel; the result
/// order follows the input grids.
std::vector<WitnessResult> scan_theta_tau(
    const ComplexMatrix &hamiltonian,
    const MesostatePartition &part,
    std::span<const double> theta_grid,
    std::span<const double> tau_grid,
    std::size_t n,
    const Tolerances &tol = {});

/// Angles in [theta_lo, theta_hi) at which the theta preparation carries
/// no detectable one-step coherence at every probe period, i.e. rows of the
/// witness map that vanish for all tau. Roots of the signed coherence of
/// the record (X, X) at the first probe period, X the block of site 0, are
/// bracketed on `grid_points` cells and bisected; a root is kept when the
/// coherence at every probe period is below 1e-9.
std::vector<double> coherence_free_angles(
    const ComplexMatrix &hamiltonian,
    const MesostatePartition &part,
    std::span<const double> probe_taus,
    double theta_lo,
    double theta_hi,
    std::size_t grid_points = 2000);

}  // namespace qlump

#endif
