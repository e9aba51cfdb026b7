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

#ifndef QLUMP_LINALG_H
#define QLUMP_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qlump/tolerances.h"

namespace qlump {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
   public:
    /// dim x dim zero matrix. dim must be at least 1.
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const Complex> values);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t dim() const {
        return dim_;
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }
    std::span<Complex> entries() {
        return entries_;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    bool operator==(const ComplexMatrix &other) const = default;

    std::string str() const;

   private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix adjoint(const ComplexMatrix &a);
Complex trace(const ComplexMatrix &a);
double frobenius_norm(const ComplexMatrix &a);
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// Largest entrywise modulus of a - a^dagger.
double hermiticity_defect(const ComplexMatrix &a);
/// u * a * u^dagger.
ComplexMatrix conjugate(const ComplexMatrix &u, const ComplexMatrix &a);

/// Eigenpairs of a Hermitian matrix. Columns of `eigenvectors` are
/// orthonormal and ordered like the ascending `eigenvalues`.
struct EigenSystem {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    /// V diag(f(eps)) V^dagger.
    template <typename F>
    ComplexMatrix spectral_map(F &&f) const {
        std::vector<Complex> values;
        values.reserve(eigenvalues.size());
        for (double e : eigenvalues) {
            values.push_back(f(e));
        }
        return apply_diagonal(values);
    }

    ComplexMatrix apply_diagonal(std::span<const Complex> values) const;
};

/// Cyclic complex Jacobi diagonalization.
///
/// Throws NotHermitian when max|H - H^dagger| exceeds `tol.hermitian`, and
/// NoConvergence when the off-diagonal mass is still above threshold after
/// `tol.jacobi_max_sweeps` sweeps. Output is a deterministic function of
/// the input. Degenerate eigenspaces come back in an arbitrary orthonormal
/// basis, so only basis-independent quantities should be compared.
EigenSystem hermitian_eig(const ComplexMatrix &h, const Tolerances &tol = {});

/// exp(-i H tau) with hbar = 1, built from the spectral decomposition.
ComplexMatrix propagator(const ComplexMatrix &h, double tau, const Tolerances &tol = {});
ComplexMatrix propagator(const EigenSystem &eig, double tau);

}  // namespace qlump

#endif
