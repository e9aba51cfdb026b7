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

#include "qlump/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qlump/errors.h"

namespace qlump {

namespace {

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(
            std::string(op) + ": dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
}

double off_diagonal_norm(const ComplexMatrix &a) {
    double acc = 0;
    for (std::size_t r = 0; r < a.dim(); r++) {
        for (std::size_t c = 0; c < a.dim(); c++) {
            if (r != c) {
                acc += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(acc);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) {
        throw DimensionMismatch("matrix dimension must be at least 1");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0) {
        throw DimensionMismatch("matrix dimension must be at least 1");
    }
    if (entries_.size() != dim * dim) {
        throw DimensionMismatch(
            "expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(entries_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t k = 0; k < dim; k++) {
        m(k, k) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
    ComplexMatrix m(values.size());
    for (std::size_t k = 0; k < values.size(); k++) {
        m(k, k) = values[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::size_t dim = rows.size();
    std::vector<Complex> entries;
    entries.reserve(dim * dim);
    for (const auto &row : rows) {
        if (row.size() != dim) {
            throw DimensionMismatch("from_rows: matrix is not square");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(dim, std::move(entries));
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "operator+=");
    for (std::size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "operator-=");
    for (std::size_t k = 0; k < entries_.size(); k++) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &e : entries_) {
        e *= scale;
    }
    return *this;
}

std::string ComplexMatrix::str() const {
    std::stringstream out;
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t c = 0; c < dim_; c++) {
            out << (c ? " " : "") << (*this)(r, c);
        }
        out << "\n";
    }
    return out.str();
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(ComplexMatrix a, Complex scale) {
    a *= scale;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matmul");
    std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t k = 0; k < n; k++) {
            Complex ark = a(r, k);
            if (ark == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; c++) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix out(a.dim());
    for (std::size_t r = 0; r < a.dim(); r++) {
        for (std::size_t c = 0; c < a.dim(); c++) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

Complex trace(const ComplexMatrix &a) {
    Complex acc = 0;
    for (std::size_t k = 0; k < a.dim(); k++) {
        acc += a(k, k);
    }
    return acc;
}

double frobenius_norm(const ComplexMatrix &a) {
    double acc = 0;
    for (const auto &e : a.entries()) {
        acc += std::norm(e);
    }
    return std::sqrt(acc);
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "frobenius_distance");
    double acc = 0;
    for (std::size_t k = 0; k < a.entries().size(); k++) {
        acc += std::norm(a.entries()[k] - b.entries()[k]);
    }
    return std::sqrt(acc);
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "max_abs_diff");
    double worst = 0;
    for (std::size_t k = 0; k < a.entries().size(); k++) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

double hermiticity_defect(const ComplexMatrix &a) {
    double worst = 0;
    for (std::size_t r = 0; r < a.dim(); r++) {
        for (std::size_t c = r; c < a.dim(); c++) {
            worst = std::max(worst, std::abs(a(r, c) - std::conj(a(c, r))));
        }
    }
    return worst;
}

ComplexMatrix conjugate(const ComplexMatrix &u, const ComplexMatrix &a) {
    return matmul(matmul(u, a), adjoint(u));
}

ComplexMatrix EigenSystem::apply_diagonal(std::span<const Complex> values) const {
    const auto &v = eigenvectors;
    std::size_t n = v.dim();
    if (values.size() != n) {
        throw DimensionMismatch("apply_diagonal: wrong number of diagonal values");
    }
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            Complex acc = 0;
            for (std::size_t k = 0; k < n; k++) {
                acc += v(r, k) * values[k] * std::conj(v(c, k));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

EigenSystem hermitian_eig(const ComplexMatrix &h, const Tolerances &tol) {
    double defect = hermiticity_defect(h);
    if (!(defect <= tol.hermitian)) {
        throw NotHermitian("max |H - H^dagger| = " + std::to_string(defect));
    }

    std::size_t n = h.dim();
    ComplexMatrix a = h;
    ComplexMatrix v = ComplexMatrix::identity(n);
    for (std::size_t k = 0; k < n; k++) {
        a(k, k) = a(k, k).real();
    }
    double threshold = tol.jacobi_off_diagonal * std::max(1.0, frobenius_norm(h));

    bool converged = false;
    for (std::size_t sweep = 0; sweep <= tol.jacobi_max_sweeps; sweep++) {
        if (off_diagonal_norm(a) <= threshold) {
            converged = true;
            break;
        }
        if (sweep == tol.jacobi_max_sweeps) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                Complex apq = a(p, q);
                double r = std::abs(apq);
                if (r == 0) {
                    continue;
                }
                // Rotate the phase of a_pq away, then do a real Jacobi step.
                Complex phase = apq / r;
                double theta = (a(q, q).real() - a(p, p).real()) / (2 * r);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                }
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                Complex g_pp = c;
                Complex g_pq = s;
                Complex g_qp = -s * std::conj(phase);
                Complex g_qq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; k++) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * g_pp + akq * g_qp;
                    a(k, q) = akp * g_pq + akq * g_qq;
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = vkp * g_pp + vkq * g_qp;
                    v(k, q) = vkp * g_pq + vkq * g_qq;
                }
                for (std::size_t k = 0; k < n; k++) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
                    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (!converged) {
        throw NoConvergence(
            "Jacobi diagonalization did not converge within " + std::to_string(tol.jacobi_max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenSystem result{{}, ComplexMatrix(n)};
    result.eigenvalues.reserve(n);
    for (std::size_t col = 0; col < n; col++) {
        std::size_t src = order[col];
        result.eigenvalues.push_back(a(src, src).real());
        for (std::size_t row = 0; row < n; row++) {
            result.eigenvectors(row, col) = v(row, src);
        }
    }
    return result;
}

ComplexMatrix propagator(const EigenSystem &eig, double tau) {
    return eig.spectral_map([tau](double e) {
        return std::polar(1.0, -e * tau);
    });
}

ComplexMatrix propagator(const ComplexMatrix &h, double tau, const Tolerances &tol) {
    return propagator(hermitian_eig(h, tol), tau);
}

}  // namespace qlump
