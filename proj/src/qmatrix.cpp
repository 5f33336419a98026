// Copyright 2026 The Whichway Authors
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

#include "whichway/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace whichway {

namespace {

constexpr double kHermitianRejectThreshold = 1e-6;
constexpr int kMaxJacobiSweeps = 100;

std::string dim_text(std::size_t a, std::size_t b) {
    return std::to_string(a) + " vs " + std::to_string(b);
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim_ * dim_) {
        throw DimMismatch("ComplexMatrix: " + std::to_string(data_.size()) +
                          " entries cannot form a " + std::to_string(dim_) + "x" +
                          std::to_string(dim_) + " matrix");
    }
    if (!is_finite()) {
        throw BadParameter("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw DimMismatch("ComplexMatrix: ragged row (" + dim_text(row.size(), dim_) + ")");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!is_finite()) {
        throw BadParameter("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> ket, std::span<const cplx> bra) {
    if (ket.size() != bra.size()) {
        throw DimMismatch("outer: " + dim_text(ket.size(), bra.size()));
    }
    ComplexMatrix m(ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i) {
        for (std::size_t j = 0; j < bra.size(); ++j) {
            m(i, j) = ket[i] * std::conj(bra[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            r(j, i) = std::conj((*this)(i, j));
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            r(j, i) = (*this)(i, j);
        }
    }
    return r;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::hermiticity_error() const {
    double err = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            err = std::max(err, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return err;
}

bool ComplexMatrix::is_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx &z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (other.dim_ != dim_) {
        throw DimMismatch("matrix sum: " + dim_text(dim_, other.dim_));
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (other.dim_ != dim_) {
        throw DimMismatch("matrix difference: " + dim_text(dim_, other.dim_));
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx scale) {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim_ != b.dim_) {
        throw DimMismatch("matrix product: " + dim_text(a.dim_, b.dim_));
    }
    const std::size_t n = a.dim_;
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                r(i, j) += aik * b(k, j);
            }
        }
    }
    return r;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatch("max_abs_diff: " + dim_text(a.dim(), b.dim()));
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    }
    return m;
}

// ---------------------------------------------------------------------------
// SubsystemDims

SubsystemDims::SubsystemDims(std::initializer_list<std::size_t> dims) : SubsystemDims(std::vector(dims)) {}

SubsystemDims::SubsystemDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw BadParameter("SubsystemDims: at least one factor required");
    }
    if (std::any_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 0; })) {
        throw BadParameter("SubsystemDims: factor dimensions must be positive");
    }
}

std::size_t SubsystemDims::total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

SubsystemDims SubsystemDims::concat(const SubsystemDims &other) const {
    std::vector<std::size_t> all = dims_;
    all.insert(all.end(), other.dims_.begin(), other.dims_.end());
    return SubsystemDims(std::move(all));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SubsystemDims dims, double tolerance)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), tolerance_(tolerance) {
    if (tolerance_ < 0.0) {
        throw BadParameter("DensityMatrix: negative tolerance");
    }
    if (dims_.total() != matrix_.dim()) {
        throw DimMismatch("DensityMatrix: subsystem dims multiply to " + std::to_string(dims_.total()) +
                          ", matrix dim is " + std::to_string(matrix_.dim()));
    }
    if (!matrix_.is_finite()) {
        throw BadParameter("DensityMatrix: non-finite entry");
    }
    const double herm = matrix_.hermiticity_error();
    if (herm > tolerance_) {
        throw NotHermitian("DensityMatrix: hermiticity error " + std::to_string(herm));
    }
    const double trace_err = std::abs(matrix_.trace() - 1.0);
    if (trace_err > tolerance_) {
        throw NotNormalized("DensityMatrix: trace deviates from 1 by " + std::to_string(trace_err));
    }
    const auto eig = herm_eig(matrix_);
    if (eig.values.back() < -tolerance_) {
        throw NotPSD("DensityMatrix: eigenvalue " + std::to_string(eig.values.back()));
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, double tolerance)
    : DensityMatrix(matrix, SubsystemDims::single(matrix.dim()), tolerance) {}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * cplx(1.0 / static_cast<double>(dim)));
}

// ---------------------------------------------------------------------------
// Tensor products and partial traces

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    ComplexMatrix r(da * db);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) {
                continue;
            }
            for (std::size_t k = 0; k < db; ++k) {
                for (std::size_t l = 0; l < db; ++l) {
                    r(i * db + k, j * db + l) = aij * b(k, l);
                }
            }
        }
    }
    return r;
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(tensor(a.matrix(), b.matrix()), a.dims().concat(b.dims()),
                         std::max(a.tolerance(), b.tolerance()));
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemDims &dims,
                            std::span<const std::size_t> keep) {
    if (dims.total() != m.dim()) {
        throw DimMismatch("partial_trace: subsystem dims multiply to " + std::to_string(dims.total()) +
                          ", matrix dim is " + std::to_string(m.dim()));
    }
    if (keep.empty()) {
        throw BadParameter("partial_trace: keep set is empty");
    }
    const std::size_t n = dims.size();
    std::vector<bool> kept(n, false);
    for (std::size_t k : keep) {
        if (k >= n) {
            throw IndexOutOfRange("partial_trace: subsystem " + std::to_string(k) + " of " +
                                  std::to_string(n));
        }
        if (kept[k]) {
            throw BadParameter("partial_trace: subsystem " + std::to_string(k) + " listed twice");
        }
        kept[k] = true;
    }

    // Row-major strides of the full index.
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t i = n - 1; i > 0; --i) {
        stride[i - 1] = stride[i] * dims[i];
    }

    // Offsets of every kept (resp. traced) multi-index inside the full index;
    // the full index is their sum.
    auto offsets_for = [&](bool want_kept) {
        std::vector<std::size_t> offs{0};
        for (std::size_t i = 0; i < n; ++i) {
            if (kept[i] != want_kept) {
                continue;
            }
            std::vector<std::size_t> next;
            next.reserve(offs.size() * dims[i]);
            for (std::size_t base : offs) {
                for (std::size_t d = 0; d < dims[i]; ++d) {
                    next.push_back(base + d * stride[i]);
                }
            }
            offs = std::move(next);
        }
        return offs;
    };
    const auto kept_off = offsets_for(true);
    const auto traced_off = offsets_for(false);

    const std::size_t out_dim = kept_off.size();
    ComplexMatrix r(out_dim);
    for (std::size_t a = 0; a < out_dim; ++a) {
        for (std::size_t b = 0; b < out_dim; ++b) {
            cplx s = 0.0;
            for (std::size_t t : traced_off) {
                s += m(kept_off[a] + t, kept_off[b] + t);
            }
            r(a, b) = s;
        }
    }
    return r;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    ComplexMatrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
    std::vector<std::size_t> kept_sorted(keep.begin(), keep.end());
    std::sort(kept_sorted.begin(), kept_sorted.end());
    std::vector<std::size_t> out_dims;
    for (std::size_t k : kept_sorted) {
        out_dims.push_back(rho.dims()[k]);
    }
    return DensityMatrix(std::move(reduced), SubsystemDims(std::move(out_dims)), rho.tolerance());
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

// ---------------------------------------------------------------------------
// Spectral routines

HermEig herm_eig(const ComplexMatrix &m) {
    const std::size_t n = m.dim();
    if (m.hermiticity_error() > kHermitianRejectThreshold) {
        throw NotHermitian("herm_eig: hermiticity error " + std::to_string(m.hermiticity_error()));
    }
    ComplexMatrix a = (m + m.adjoint()) * cplx(0.5);
    ComplexMatrix v = ComplexMatrix::identity(n);

    double frob2 = 0.0;
    for (const auto &z : a.data()) {
        frob2 += std::norm(z);
    }
    const double stop = frob2 * 1e-34;

    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (off <= stop) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double h = std::abs(a(p, q));
                if (h == 0.0) {
                    continue;
                }
                // Rotate the phase out of a(p, q) so the remaining step is a
                // real symmetric Jacobi rotation.
                const cplx phase = std::conj(a(p, q)) / h;
                for (std::size_t r = 0; r < n; ++r) {
                    a(r, q) *= phase;
                    v(r, q) *= phase;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    a(q, r) *= std::conj(phase);
                }

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * h);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t r = 0; r < n; ++r) {
                    const cplx arp = a(r, p);
                    const cplx arq = a(r, q);
                    a(r, p) = c * arp - s * arq;
                    a(r, q) = s * arp + c * arq;
                    const cplx vrp = v(r, p);
                    const cplx vrq = v(r, q);
                    v(r, p) = c * vrp - s * vrq;
                    v(r, q) = s * vrp + c * vrq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx apr = a(p, r);
                    const cplx aqr = a(q, r);
                    a(p, r) = c * apr - s * aqr;
                    a(q, r) = s * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * h;
                a(q, q) = aqq + t * h;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

    HermEig out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tolerance) {
    const auto eig = herm_eig(m);
    const std::size_t n = m.dim();
    ComplexMatrix r(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lambda = eig.values[k];
        if (lambda < -tolerance) {
            throw NotPSD("psd_sqrt: eigenvalue " + std::to_string(lambda));
        }
        if (lambda <= 0.0) {
            continue;
        }
        const double root = std::sqrt(lambda);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vi = eig.vectors(i, k) * root;
            for (std::size_t j = 0; j < n; ++j) {
                r(i, j) += vi * std::conj(eig.vectors(j, k));
            }
        }
    }
    return r;
}

ComplexMatrix psd_sqrt(const DensityMatrix &rho) { return psd_sqrt(rho.matrix(), rho.tolerance()); }

double trace_norm(const ComplexMatrix &m) {
    const std::size_t n = m.dim();
    double scale = 0.0;
    for (const auto &z : m.data()) {
        scale = std::max(scale, std::abs(z));
    }
    if (scale == 0.0) {
        return 0.0;
    }
    if (m.hermiticity_error() <= 1e-15 * scale) {
        const auto eig = herm_eig(m);
        return std::accumulate(eig.values.begin(), eig.values.end(), 0.0,
                               [](double acc, double x) { return acc + std::abs(x); });
    }
    // Hermitian dilation [[0, M], [M^dag, 0]] has eigenvalues +-sigma_i, which
    // keeps small singular values at full absolute precision (squaring
    // through M^dag M would not).
    ComplexMatrix dilation(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            dilation(i, n + j) = m(i, j);
            dilation(n + j, i) = std::conj(m(i, j));
        }
    }
    const auto eig = herm_eig(dilation);
    double sum = 0.0;
    for (double x : eig.values) {
        sum += std::abs(x);
    }
    return 0.5 * sum;
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatch("trace_distance: " + dim_text(a.dim(), b.dim()));
    }
    const ComplexMatrix diff = a.matrix() - b.matrix();
    double max_entry = 0.0;
    for (const auto &z : diff.data()) {
        max_entry = std::max(max_entry, std::abs(z));
    }
    if (max_entry <= a.tolerance()) {
        return 0.0;
    }
    return std::clamp(0.5 * trace_norm(diff), 0.0, 1.0);
}

double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatch("fidelity: " + dim_text(a.dim(), b.dim()));
    }
    const double f = std::clamp(trace_norm(psd_sqrt(a) * psd_sqrt(b)), 0.0, 1.0);
#ifdef WHICHWAY_INJECT_FIDELITY_FAULT
    return -f;
#else
    return f;
#endif
}

}  // namespace whichway
