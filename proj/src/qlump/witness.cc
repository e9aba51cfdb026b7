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

#include "qlump/witness.h"

#include <cmath>
#include <memory>

#include "qlump/errors.h"
#include "qlump/parallel.h"

namespace qlump {

Marginal marginal_last(
    const DensityMatrix &rho0,
    const StroboscopicProtocol &protocol,
    std::size_t epoch,
    const MesostatePartition &part,
    Scheme scheme) {
    auto dist = joint_distribution(rho0, protocol, part, epoch, scheme);
    Marginal out;
    for (const auto &block : dist.partition.blocks()) {
        out[block.label] = 0;
    }
    for (const auto &[seq, p] : dist.table) {
        out[dist.partition.block(seq.items.back()).label] += p;
    }
    return out;
}

double kolmogorov_distance(const Marginal &p, const Marginal &q) {
    if (p.size() != q.size()) {
        throw LabelMismatch("marginals have different label sets");
    }
    double acc = 0;
    for (auto a = p.begin(), b = q.begin(); a != p.end(); ++a, ++b) {
        if (a->first != b->first) {
            throw LabelMismatch("label '" + a->first + "' has no counterpart");
        }
        acc += std::abs(a->second - b->second);
    }
    return acc;
}

WitnessResult delta_d(
    const DensityMatrix &rho0,
    const DensityMatrix &sigma0,
    const StroboscopicProtocol &protocol,
    std::size_t n,
    const MesostatePartition &part) {
    if (n == 0) {
        throw IndexOutOfRange("the witness index n starts at 1");
    }
    if (rho0.dim() != sigma0.dim()) {
        throw DimensionMismatch("preparations have different dimensions");
    }
    double d_n = kolmogorov_distance(
        marginal_last(rho0, protocol, n - 1, part, Scheme::quantum),
        marginal_last(sigma0, protocol, n - 1, part, Scheme::quantum));
    double d_next = kolmogorov_distance(
        marginal_last(rho0, protocol, n, part, Scheme::quantum),
        marginal_last(sigma0, protocol, n, part, Scheme::quantum));
    return {protocol.tau(), n, d_n, d_next, d_next - d_n};
}

DensityMatrix theta_preparation(std::size_t dim, double theta) {
    if (dim < 5) {
        throw PreparationUnavailable("the theta preparation needs at least 5 sites");
    }
    std::vector<Complex> amplitudes(dim);
    amplitudes[0] = 1;
    amplitudes[2] = std::cos(theta);
    amplitudes[4] = std::sin(theta);
    return pure_state(amplitudes);
}

DensityMatrix reference_preparation(std::size_t dim) {
    if (dim < 5) {
        throw PreparationUnavailable("the reference preparation needs at least 5 sites");
    }
    std::vector<double> weights(dim);
    weights[0] = 0.5;
    weights[2] = 0.25;
    weights[4] = 0.25;
    return diagonal_state(weights);
}

std::vector<WitnessResult> scan_theta_tau(
    const ComplexMatrix &hamiltonian,
    const MesostatePartition &part,
    std::span<const double> theta_grid,
    std::span<const double> tau_grid,
    std::size_t n,
    const Tolerances &tol) {
    if (theta_grid.empty() || tau_grid.empty()) {
        throw Error("theta and tau grids must be non-empty");
    }
    std::size_t dim = hamiltonian.dim();
    auto sigma0 = reference_preparation(dim);
    check_enumeration_caps(dim, n, part.size());

    std::vector<std::unique_ptr<StroboscopicProtocol>> protocols(tau_grid.size());
    parallel_for(tau_grid.size(), [&](std::size_t j) {
        protocols[j] = std::make_unique<StroboscopicProtocol>(hamiltonian, tau_grid[j], tol);
    });

    std::size_t columns = tau_grid.size();
    std::vector<WitnessResult> cells(theta_grid.size() * columns);
    parallel_for(cells.size(), [&](std::size_t cell) {
        std::size_t row = cell / columns;
        std::size_t col = cell % columns;
        cells[cell] = delta_d(theta_preparation(dim, theta_grid[row]), sigma0, *protocols[col], n, part);
    });
    return cells;
}

std::vector<double> coherence_free_angles(
    const ComplexMatrix &hamiltonian,
    const MesostatePartition &part,
    std::span<const double> probe_taus,
    double theta_lo,
    double theta_hi,
    std::size_t grid_points) {
    if (probe_taus.empty() || !(theta_hi > theta_lo) || grid_points == 0) {
        throw Error("coherence_free_angles needs probe periods and a non-empty angle window");
    }
    std::size_t dim = hamiltonian.dim();
    std::vector<StroboscopicProtocol> protocols;
    for (double tau : probe_taus) {
        protocols.emplace_back(hamiltonian, tau);
    }
    std::size_t home = part.block_of(0);
    OutcomeSequence stay{{home, home}};
    auto coherence = [&](const StroboscopicProtocol &protocol, double theta) {
        return detectable_coherence(theta_preparation(dim, theta), protocol, stay, part).value();
    };

    std::vector<double> candidates;
    double step = (theta_hi - theta_lo) / static_cast<double>(grid_points);
    double prev_theta = theta_lo;
    double prev = coherence(protocols.front(), prev_theta);
    if (prev == 0) {
        candidates.push_back(prev_theta);
    }
    for (std::size_t i = 1; i <= grid_points; i++) {
        double theta = theta_lo + static_cast<double>(i) * step;
        double value = coherence(protocols.front(), theta);
        if (prev != 0 && (value == 0 || (prev < 0) != (value < 0))) {
            double lo = prev_theta;
            double hi = theta;
            bool lo_negative = prev < 0;
            for (int iter = 0; iter < 200; iter++) {
                double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) {
                    break;
                }
                double f = coherence(protocols.front(), mid);
                if (f == 0) {
                    lo = hi = mid;
                    break;
                }
                ((f < 0) == lo_negative ? lo : hi) = mid;
            }
            double root = 0.5 * (lo + hi);
            if (root < theta_hi) {
                candidates.push_back(root);
            }
        }
        prev_theta = theta;
        prev = value;
    }

    std::vector<double> roots;
    for (double theta : candidates) {
        bool quiet = true;
        for (const auto &protocol : protocols) {
            quiet = quiet && std::abs(coherence(protocol, theta)) < 1e-9;
        }
        if (quiet) {
            roots.push_back(theta);
        }
    }
    return roots;
}

}  // namespace qlump
