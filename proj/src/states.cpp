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

#include "whichway/states.hpp"

#include <cmath>
#include <random>
#include <string>

namespace whichway {

namespace {

constexpr double kNormTolerance = 1e-10;

double norm2(const std::vector<cplx> &v) {
    double s = 0.0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return s;
}

std::vector<cplx> gaussian_vector(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto &z : v) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = cplx(re, im);
    }
    return v;
}

}  // namespace

Ket::Ket(std::vector<cplx> amplitudes, SubsystemDims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
    if (dims_.total() != amplitudes_.size()) {
        throw DimMismatch("Ket: subsystem dims multiply to " + std::to_string(dims_.total()) + ", ket has " +
                          std::to_string(amplitudes_.size()) + " amplitudes");
    }
    const double n2 = norm2(amplitudes_);
    if (std::abs(n2 - 1.0) > kNormTolerance) {
        throw NotNormalized("Ket: squared norm " + std::to_string(n2));
    }
}

Ket::Ket(std::vector<cplx> amplitudes)
    : Ket(amplitudes, SubsystemDims::single(amplitudes.size())) {}

void SpinPreparation::validate() const {
    const double n0 = std::norm(a00) + std::norm(a01);
    const double n1 = std::norm(a10) + std::norm(a11);
    if (std::abs(n0 - 1.0) > kNormTolerance) {
        throw NotNormalized("SpinPreparation: |a00|^2 + |a01|^2 = " + std::to_string(n0));
    }
    if (std::abs(n1 - 1.0) > kNormTolerance) {
        throw NotNormalized("SpinPreparation: |a10|^2 + |a11|^2 = " + std::to_string(n1));
    }
}

Ket basis_ket(std::size_t dim, std::size_t index) { return basis_ket(SubsystemDims::single(dim), index); }

Ket basis_ket(const SubsystemDims &dims, std::size_t index) {
    const std::size_t dim = dims.total();
    if (index >= dim) {
        throw IndexOutOfRange("basis_ket: index " + std::to_string(index) + " for dim " + std::to_string(dim));
    }
    std::vector<cplx> amps(dim);
    amps[index] = 1.0;
    return Ket(std::move(amps), dims);
}

Ket max_entangled(std::size_t d) {
    if (d == 0) {
        throw BadParameter("max_entangled: d must be positive");
    }
    std::vector<cplx> amps(d * d);
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; ++k) {
        amps[k * d + k] = a;
    }
    return Ket(std::move(amps), SubsystemDims({d, d}));
}

DensityMatrix density_from_ket(const Ket &psi) {
    return DensityMatrix(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()), psi.dims());
}

Ket quanton_spin_state(const SpinPreparation &prep) {
    prep.validate();
    const double h = 1.0 / std::sqrt(2.0);
    return Ket({prep.a00 * h, prep.a01 * h, prep.a10 * h, prep.a11 * h}, SubsystemDims({2, 2}));
}

DensityMatrix path_spin_state(const DensityMatrix &rho_qs, std::size_t path) {
    const auto &dims = rho_qs.dims();
    if (dims.size() < 2 || dims[0] != 2) {
        throw DimMismatch("path_spin_state: expected a Q (x) S state with a two-level path factor");
    }
    if (path > 1) {
        throw IndexOutOfRange("path_spin_state: path must be 0 or 1");
    }
    const std::size_t ds = rho_qs.dim() / 2;
    ComplexMatrix block(ds);
    for (std::size_t i = 0; i < ds; ++i) {
        for (std::size_t j = 0; j < ds; ++j) {
            block(i, j) = 2.0 * rho_qs.matrix()(path * ds + i, path * ds + j);
        }
    }
    std::vector<std::size_t> rest(dims.values().begin() + 1, dims.values().end());
    return DensityMatrix(std::move(block), SubsystemDims(std::move(rest)), rho_qs.tolerance());
}

DensityMatrix random_density(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw BadParameter("random_density: dim must be positive");
    }
    std::mt19937_64 rng(seed);
    ComplexMatrix g(dim, gaussian_vector(dim * dim, rng));
    ComplexMatrix rho = g * g.adjoint();
    // Exact hermiticity before normalizing; the product is only Hermitian
    // up to round-off.
    rho = (rho + rho.adjoint()) * cplx(0.5);
    rho *= cplx(1.0 / rho.trace().real());
    return DensityMatrix(std::move(rho));
}

Ket random_ket(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw BadParameter("random_ket: dim must be positive");
    }
    std::mt19937_64 rng(seed);
    auto v = gaussian_vector(dim, rng);
    const double n = std::sqrt(norm2(v));
    for (auto &z : v) {
        z /= n;
    }
    return Ket(std::move(v));
}

}  // namespace whichway
