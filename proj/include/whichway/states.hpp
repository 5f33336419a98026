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

#include <cstdint>
#include <vector>

#include "whichway/qmatrix.hpp"

namespace whichway {

/// Normalized state vector with tensor metadata.
class Ket {
   public:
    /// Throws NotNormalized if sum |amp|^2 deviates from 1 by more than 1e-10.
    Ket(std::vector<cplx> amplitudes, SubsystemDims dims);
    explicit Ket(std::vector<cplx> amplitudes);

    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<cplx> &amplitudes() const { return amplitudes_; }
    const SubsystemDims &dims() const { return dims_; }
    cplx operator[](std::size_t i) const { return amplitudes_[i]; }

   private:
    std::vector<cplx> amplitudes_;
    SubsystemDims dims_;
};

/// Path-conditioned spin amplitudes: |psi_0> = a00|0> + a01|1>,
/// |psi_1> = a10|0> + a11|1>. Each row must be normalized.
struct SpinPreparation {
    cplx a00 = 1.0;
    cplx a01 = 0.0;
    cplx a10 = 0.0;
    cplx a11 = 1.0;

    void validate() const;
};

Ket basis_ket(std::size_t dim, std::size_t index);
/// Same, annotated with a composite structure (index is the flat index).
Ket basis_ket(const SubsystemDims &dims, std::size_t index);

/// (1/sqrt d) sum_a |a>|a> on a d x d system.
Ket max_entangled(std::size_t d);

DensityMatrix density_from_ket(const Ket &psi);

/// (|0>_Q |psi_0>_S + |1>_Q |psi_1>_S) / sqrt 2 over Q (x) S.
Ket quanton_spin_state(const SpinPreparation &prep);

/// rho_Si = 2 <i|_Q rho_QS |i>_Q, for a path-spin state with Q as the first
/// factor of dimension 2.
DensityMatrix path_spin_state(const DensityMatrix &rho_qs, std::size_t path);

/// G G^dag / Tr(G G^dag) with G filled by seeded complex Gaussians.
DensityMatrix random_density(std::size_t dim, std::uint64_t seed);

/// Haar-like random pure state from a seeded Gaussian vector.
Ket random_ket(std::size_t dim, std::uint64_t seed);

}  // namespace whichway
