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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "whichway/errors.hpp"

namespace whichway {

using cplx = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-10;

/// Dense square complex matrix stored row-major.
///
/// All operators in the library (states, unitaries, superoperators) are
/// small (dim <= 64), so a flat vector is used instead of a BLAS backend.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    /// Takes ownership of `entries` (row-major, dim*dim). Throws DimMismatch
    /// if the size is not a perfect square of `dim`, BadParameter on
    /// non-finite entries.
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const cplx> diag);
    /// |ket><bra|
    static ComplexMatrix outer(std::span<const cplx> ket, std::span<const cplx> bra);

    std::size_t dim() const { return dim_; }
    cplx &operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const cplx &operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
    std::span<const cplx> data() const { return data_; }
    std::span<cplx> data() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    cplx trace() const;
    /// max_ij |m_ij - m_ji^*|
    double hermiticity_error() const;
    bool is_finite() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(cplx scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

   private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// Largest entry-wise modulus of a - b.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Local dimensions of a composite system, leftmost factor slowest-varying.
/// The library-wide ordering is Q (path) x S (spin) x D (detector) x D' (ancilla).
class SubsystemDims {
   public:
    SubsystemDims() = default;
    SubsystemDims(std::initializer_list<std::size_t> dims);
    explicit SubsystemDims(std::vector<std::size_t> dims);

    /// A single factor of dimension `dim`.
    static SubsystemDims single(std::size_t dim) { return SubsystemDims({dim}); }

    std::size_t size() const { return dims_.size(); }
    std::size_t operator[](std::size_t i) const { return dims_[i]; }
    std::size_t total() const;
    const std::vector<std::size_t> &values() const { return dims_; }
    SubsystemDims concat(const SubsystemDims &other) const;

    friend bool operator==(const SubsystemDims &, const SubsystemDims &) = default;

   private:
    std::vector<std::size_t> dims_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix with tensor metadata.
/// The invariants are checked on construction against `tolerance`.
class DensityMatrix {
   public:
    DensityMatrix(ComplexMatrix matrix, SubsystemDims dims, double tolerance = kDefaultTolerance);
    /// Single-factor state.
    explicit DensityMatrix(ComplexMatrix matrix, double tolerance = kDefaultTolerance);

    const ComplexMatrix &matrix() const { return matrix_; }
    const SubsystemDims &dims() const { return dims_; }
    double tolerance() const { return tolerance_; }
    std::size_t dim() const { return matrix_.dim(); }

    static DensityMatrix maximally_mixed(std::size_t dim);

   private:
    ComplexMatrix matrix_;
    SubsystemDims dims_;
    double tolerance_;
};

struct HermEig {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // eigenvectors as columns
};

/// Kronecker product: (a (x) b)[i*db+k, j*db+l] = a[i,j] * b[k,l].
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced state over the subsystems listed in `keep`, in their original
/// relative order. `keep` may be given in any order; duplicates are rejected.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::size_t> keep);

/// Raw partial trace for operators that are not states (e.g. U rho V^dag).
ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemDims &dims,
                            std::span<const std::size_t> keep);

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. The input is symmetrized as (m + m^dag)/2 first; asymmetry
/// above 1e-6 is rejected with NotHermitian.
HermEig herm_eig(const ComplexMatrix &m);

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero,
/// anything below -tol raises NotPSD.
ComplexMatrix psd_sqrt(const DensityMatrix &rho);
ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tolerance = kDefaultTolerance);

/// Sum of singular values; accepts non-Hermitian input.
double trace_norm(const ComplexMatrix &m);

/// 1/2 ||a - b||_1. Returns exactly 0 when the states agree entry-wise
/// within the tolerance of `a`.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

/// Tr sqrt(sqrt(a) b sqrt(a)), evaluated as ||sqrt(a) sqrt(b)||_1.
double fidelity(const DensityMatrix &a, const DensityMatrix &b);

}  // namespace whichway
