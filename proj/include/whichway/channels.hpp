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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "whichway/qmatrix.hpp"

namespace whichway {

inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kCPTolerance = 1e-8;

/// Matrix with U^dag U = I (checked on construction).
class Unitary {
   public:
    explicit Unitary(ComplexMatrix matrix, double tolerance = kUnitaryTolerance);

    static Unitary identity(std::size_t dim) { return Unitary(ComplexMatrix::identity(dim)); }

    const ComplexMatrix &matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.dim(); }
    Unitary adjoint() const { return Unitary(matrix_.adjoint()); }

   private:
    ComplexMatrix matrix_;
};

/// Seeded random unitary (Gram-Schmidt on a complex Gaussian matrix).
Unitary random_unitary(std::size_t dim, std::uint64_t seed);

/// Operator that maps |a>|b> on A (x) B to |b>|a> on B (x) A.
ComplexMatrix swap_operator(std::size_t dim_a, std::size_t dim_b);

/// Re-express an operator on A (x) B as the same operator on B (x) A.
ComplexMatrix swap_factors(const ComplexMatrix &m, std::size_t dim_a, std::size_t dim_b);

/// Channel rho -> Tr_env[U (rho (x) env_state) U^dag], with U acting on
/// system (x) environment. Every environment factor is traced out.
class StinespringChannel {
   public:
    StinespringChannel(Unitary unitary, DensityMatrix env_state, std::size_t sys_dim);

    /// Unitary-only channel (trivial one-dimensional environment).
    static StinespringChannel unitary_channel(const Unitary &u);
    /// Build from a unitary written on environment (x) system, e.g. a
    /// spin-detector interaction viewed as a channel on the detector.
    static StinespringChannel from_env_first(const Unitary &u_env_sys, DensityMatrix env_state);

    const Unitary &unitary() const { return unitary_; }
    const DensityMatrix &env_state() const { return env_state_; }
    std::size_t sys_dim() const { return sys_dim_; }
    std::size_t env_dim() const { return env_dim_; }

    /// Kraus operators sqrt(p_n) (I (x) <m|) U (I (x) |e_n>) over the
    /// eigen-decomposition of env_state; zero-weight terms are dropped.
    std::vector<ComplexMatrix> kraus_operators() const;

   private:
    Unitary unitary_;
    DensityMatrix env_state_;
    std::size_t sys_dim_;
    std::size_t env_dim_;
};

DensityMatrix apply_channel(const StinespringChannel &ch, const DensityMatrix &rho);

/// (Phi (x) 1)(rho): the channel acts on the first factor of `rho_sys_anc`,
/// the identity on everything after it.
DensityMatrix apply_channel_extended(const StinespringChannel &ch, const DensityMatrix &rho_sys_anc);

/// Linear map on d x d operators, stored as a d^2 x d^2 matrix acting on
/// column-stacked vectors: vec(X)[k + l*d] = X(k, l).
class SuperOp {
   public:
    SuperOp(std::size_t d, ComplexMatrix matrix);

    /// Tabulate a map by its action on every matrix unit E_kl.
    static SuperOp from_map(std::size_t d, const std::function<ComplexMatrix(const ComplexMatrix &)> &map);

    std::size_t d() const { return d_; }
    const ComplexMatrix &matrix() const { return matrix_; }
    ComplexMatrix apply(const ComplexMatrix &x) const;

   private:
    std::size_t d_;
    ComplexMatrix matrix_;
};

ComplexMatrix matrix_unit(std::size_t d, std::size_t k, std::size_t l);
std::vector<cplx> vec(const ComplexMatrix &x);
ComplexMatrix unvec(std::size_t d, std::span<const cplx> v);

SuperOp superop_of_channel(const StinespringChannel &ch);

/// sum_kl E_kl (x) S(E_kl); PSD exactly when S is completely positive.
ComplexMatrix choi_matrix(const SuperOp &s);

bool is_completely_positive(const SuperOp &s, double tolerance = kCPTolerance);
bool is_trace_preserving(const SuperOp &s, double tolerance = kCPTolerance);

/// The four path-sandwiched spin maps Lambda_ij of a path-preserving
/// interaction, indexed as block(i, j).
class BlockChannel {
   public:
    BlockChannel(SuperOp l00, SuperOp l01, SuperOp l10, SuperOp l11);

    std::size_t spin_dim() const { return blocks_[0].d(); }
    const SuperOp &block(std::size_t i, std::size_t j) const { return blocks_.at(2 * i + j); }

    /// Throws BadParameter if Lambda_00 / Lambda_11 are not CPTP within
    /// 1e-8, or if Lambda_10(s) != Lambda_01(s^dag)^dag on the matrix units
    /// within 1e-9.
    void validate() const;

   private:
    std::array<SuperOp, 4> blocks_;
};

/// Lambda_ij(s) = Tr_det[(U_i (x) I) (s (x) detector_in) (U_j (x) I)^dag].
/// u0, u1 act on S (x) D. The first factor of `detector_in` is D; any further
/// factors (an ancilla) are idlers and are traced out with D.
BlockChannel extract_block_channel(const Unitary &u0, const Unitary &u1, const DensityMatrix &detector_in);

enum class SpecialChannelKind { identity, constant, transpose };

/// identity: s -> s; constant: s -> Tr[s] sigma; transpose: s -> s^T / d.
/// `sigma` is required for (and only used by) the constant kind and must be
/// a unit-trace Hermitian d x d matrix.
SuperOp special_channel(SpecialChannelKind kind, std::size_t d, const std::optional<ComplexMatrix> &sigma = {});

}  // namespace whichway
