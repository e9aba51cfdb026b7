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

#include "qlump/models.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlump/errors.h"

namespace qlump {

namespace {

using std::numbers::pi;

void require_even(std::size_t sites) {
    if (sites < 2 || sites % 2 != 0) {
        throw OddN("ring size must be even and at least 2, got " + std::to_string(sites));
    }
}

void require_lumpable_ring(std::size_t sites) {
    require_even(sites);
    if (sites < 4) {
        throw NTooSmall("lumped ring quantities need N >= 4, got " + std::to_string(sites));
    }
}

void require_positive_window(double tau_max) {
    if (!(tau_max > 0)) {
        throw Error("tau_max must be positive");
    }
}

// Energy gap eps_{l + N/2} - eps_l = 4 cos(2 pi l / N).
double hop_frequency(std::size_t sites, std::size_t l) {
    return 4 * std::cos(2 * pi * static_cast<double>(l) / static_cast<double>(sites));
}

double phase_angle(std::size_t sites, std::size_t l, int d, PhaseConvention convention) {
    double base = convention == PhaseConvention::derivation ? 2 * pi : 4 * pi;
    return base * static_cast<double>(l) * d / static_cast<double>(sites);
}

// d/dtau c_d(tau), same convention as coherence_coefficients.
std::map<int, Complex> coherence_derivatives(std::size_t sites, double tau) {
    std::map<int, Complex> out;
    for (int d = 2; d <= static_cast<int>(sites) - 2; d += 2) {
        Complex acc = 0;
        for (std::size_t l = 0; l < sites; l++) {
            double a = hop_frequency(sites, l);
            acc += Complex(0, a) * std::polar(1.0, -a * tau) *
                   std::polar(1.0, phase_angle(sites, l, d, PhaseConvention::derivation));
        }
        out[d] = acc;
    }
    return out;
}

// d/dtau of sum_d |c_d|^2.
double residual_slope(std::size_t sites, double tau) {
    auto c = coherence_coefficients(sites, tau);
    auto dc = coherence_derivatives(sites, tau);
    double acc = 0;
    for (const auto &[d, value] : c) {
        acc += 2 * (std::conj(value) * dc[d]).real();
    }
    return acc;
}

// Where the coefficients touch zero without crossing, the slope of
// sum |c_d|^2 is cubic and noisy, so the bisection above stalls about 1e-8
// away. The coefficients are real there and their own slope crosses
// zero linearly; bisect on it instead.
double polish_double_root(std::size_t sites, double root) {
    constexpr double reach = 1e-6;
    auto slope = [&](double tau) {
        return coherence_derivatives(sites, tau).begin()->second.real();
    };
    double worst_slope = 0;
    for (const auto &[d, v] : coherence_derivatives(sites, root)) {
        worst_slope = std::max(worst_slope, std::abs(v));
    }
    if (worst_slope > 1e-4) {
        return root;
    }
    double lo = root - reach;
    double hi = root + reach;
    double f_lo = slope(lo);
    if ((f_lo < 0) == (slope(hi) < 0)) {
        return root;
    }
    for (int iter = 0; iter < 200; iter++) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        ((slope(mid) < 0) == (f_lo < 0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

RingModel ring_hamiltonian(std::size_t sites) {
    require_even(sites);
    ComplexMatrix h(sites);
    for (std::size_t x = 0; x < sites; x++) {
        std::size_t next = (x + 1) % sites;
        h(next, x) += -1.0;
        h(x, next) += -1.0;
    }
    return {sites, std::move(h), MesostatePartition::parity(sites)};
}

double ring_eigenvalue(std::size_t sites, std::size_t k) {
    return -2 * std::cos(2 * pi * static_cast<double>(k) / static_cast<double>(sites));
}

std::vector<Complex> ring_eigenvector(std::size_t sites, std::size_t k) {
    std::vector<Complex> v(sites);
    double norm = 1 / std::sqrt(static_cast<double>(sites));
    for (std::size_t x = 0; x < sites; x++) {
        v[x] = std::polar(norm, -2 * pi * static_cast<double>(k * x % sites) / static_cast<double>(sites));
    }
    return v;
}

double lumped_transition_ab(std::size_t sites, double tau) {
    require_lumpable_ring(sites);
    Complex acc = 0;
    for (std::size_t l = 0; l < sites; l++) {
        acc += std::polar(1.0, -hop_frequency(sites, l) * tau);
    }
    return 0.5 - acc.real() / (2 * static_cast<double>(sites));
}

std::vector<double> lumped_magic_times(std::size_t sites, double tau_max) {
    require_lumpable_ring(sites);
    require_positive_window(tau_max);

    // Each non-zero frequency a needs a * tau in 2 pi Z, i.e. tau on the
    // lattice (2 pi / a) Z. Candidates come from the coarsest lattice.
    std::vector<double> periods;
    for (std::size_t l = 0; l < sites; l++) {
        double a = std::abs(hop_frequency(sites, l));
        if (a < 1e-12) {
            continue;
        }
        double p = 2 * pi / a;
        bool seen = std::any_of(periods.begin(), periods.end(), [&](double q) {
            return std::abs(q - p) < 1e-12 * p;
        });
        if (!seen) {
            periods.push_back(p);
        }
    }
    double coarsest = *std::max_element(periods.begin(), periods.end());

    std::vector<double> roots;
    for (std::size_t k = 1;; k++) {
        double tau = static_cast<double>(k) * coarsest;
        if (tau > tau_max * (1 + 1e-12)) {
            break;
        }
        bool commensurate = std::all_of(periods.begin(), periods.end(), [&](double p) {
            double ratio = tau / p;
            return std::abs(ratio - std::round(ratio)) < 1e-9;
        });
        if (commensurate && std::abs(lumped_transition_ab(sites, tau)) < 1e-10) {
            roots.push_back(tau);
        }
    }
    return roots;
}

std::map<int, Complex> coherence_coefficients(std::size_t sites, double tau, PhaseConvention convention) {
    require_lumpable_ring(sites);
    std::map<int, Complex> out;
    for (int d = 2; d <= static_cast<int>(sites) - 2; d += 2) {
        Complex acc = 0;
        for (std::size_t l = 0; l < sites; l++) {
            Complex weight = 1.0 - std::polar(1.0, -hop_frequency(sites, l) * tau);
            acc += weight * std::polar(1.0, phase_angle(sites, l, d, convention));
        }
        out[d] = acc;
    }
    return out;
}

double coherence_residual(std::size_t sites, double tau, PhaseConvention convention) {
    double worst = 0;
    for (const auto &[d, c] : coherence_coefficients(sites, tau, convention)) {
        worst = std::max(worst, std::abs(c));
    }
    return worst;
}

std::vector<double> quantum_magic_times(std::size_t sites, double tau_max) {
    require_lumpable_ring(sites);
    require_positive_window(tau_max);
    constexpr double grid_step = 1e-3;
    const double root_tol = Tolerances{}.coherence_root;
    const double window_slack = 1e-8 * std::max(1.0, tau_max);

    std::size_t cells = static_cast<std::size_t>(std::ceil(tau_max / grid_step)) + 1;
    std::vector<double> roots;
    double prev_tau = 0;
    double prev_slope = residual_slope(sites, prev_tau);
    for (std::size_t i = 1; i <= cells; i++) {
        double tau = static_cast<double>(i) * grid_step;
        double slope = residual_slope(sites, tau);
        if (prev_slope < 0 && slope >= 0) {
            double lo = prev_tau;
            double hi = tau;
            for (int iter = 0; iter < 200; iter++) {
                double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) {
                    break;
                }
                (residual_slope(sites, mid) < 0 ? lo : hi) = mid;
            }
            double root = polish_double_root(sites, 0.5 * (lo + hi));
            if (root > 0 && root <= tau_max + window_slack && coherence_residual(sites, root) < root_tol) {
                roots.push_back(root);
            }
        }
        prev_tau = tau;
        prev_slope = slope;
    }
    return roots;
}

double ring_one_step_coherence(
    std::size_t sites, double tau, const DensityMatrix &rho0, std::string_view from, std::string_view to) {
    require_lumpable_ring(sites);
    if (rho0.dim() != sites) {
        throw DimensionMismatch("state dimension differs from ring size");
    }
    auto part = MesostatePartition::parity(sites);
    std::size_t source = part.index_of(from);
    std::size_t destination = part.index_of(to);
    // Block parities enter through exp(i pi y) and the destination sum.
    double sign = (source == destination) ? 1.0 : -1.0;

    const auto &members = part.block(source).members;
    Complex acc = 0;
    for (std::size_t y : members) {
        for (std::size_t z : members) {
            if (y == z) {
                continue;
            }
            int d = static_cast<int>(y) - static_cast<int>(z);
            Complex inner = 0;
            for (std::size_t l = 0; l < sites; l++) {
                Complex weight = 1.0 + sign * std::polar(1.0, -hop_frequency(sites, l) * tau);
                inner += weight * std::polar(1.0, 2 * pi * static_cast<double>(l) * d / static_cast<double>(sites));
            }
            acc += inner * rho0(y, z);
        }
    }
    return acc.real() / (2 * static_cast<double>(sites));
}

TwoQubitModel two_qubit_model(double lambda1, double lambda2) {
    // |q1 q2> -> index 2 q1 + q2.
    ComplexMatrix h(4);
    for (std::size_t q1 = 0; q1 < 2; q1++) {
        for (std::size_t q2 = 0; q2 < 2; q2++) {
            std::size_t from = 2 * q1 + q2;
            h(2 * (1 - q1) + (1 - q2), from) += lambda1;
            h(2 * q1 + (1 - q2), from) += lambda2;
        }
    }
    MesostatePartition probe(4, {{"A", {0, 2}}, {"B", {1, 3}}});
    return {lambda1, lambda2, std::move(h), std::move(probe)};
}

}  // namespace qlump
