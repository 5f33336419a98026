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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "whichway/channels.hpp"
#include "whichway/states.hpp"

namespace whichway {
namespace {

using testing::gaussian_matrix;
using testing::pauli_x;
using testing::pauli_z;

// Reference Kronecker product written as four nested loops.
ComplexMatrix kron_loops(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            for (std::size_t k = 0; k < db; ++k) {
                for (std::size_t l = 0; l < db; ++l) {
                    out(i * db + k, j * db + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

double svd_trace_norm(const ComplexMatrix &m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(e);
    return svd.singularValues().sum();
}

DensityMatrix projector(std::size_t dim, std::size_t k) { return density_from_ket(basis_ket(dim, k)); }

TEST(ComplexMatrix, RejectsBadConstruction) {
    EXPECT_THROW(ComplexMatrix(2, std::vector<cplx>(3)), DimMismatch);
    EXPECT_THROW(ComplexMatrix(1, {cplx(NAN, 0)}), BadParameter);
    EXPECT_THROW((ComplexMatrix{{1.0, 0.0}, {0.0}}), DimMismatch);
}

TEST(ComplexMatrix, ArithmeticAndAdjoint) {
    const ComplexMatrix a{{1.0, cplx(0, 2)}, {3.0, 4.0}};
    EXPECT_EQ(a.adjoint()(0, 1), 3.0);
    EXPECT_EQ(a.adjoint()(1, 0), cplx(0, -2));
    EXPECT_EQ(a.trace(), cplx(5.0));
    const ComplexMatrix p = a * ComplexMatrix::identity(2);
    EXPECT_EQ(p, a);
    EXPECT_DOUBLE_EQ(a.hermiticity_error(), std::abs(cplx(0, 2) - 3.0));
}

TEST(Tensor, IdentityTimesIdentity) {
    EXPECT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(Tensor, SigmaZTimesSigmaXHasSignedBlocks) {
    const ComplexMatrix zx = tensor(pauli_z(), pauli_x());
    const ComplexMatrix want{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}};
    EXPECT_EQ(zx, want);
}

TEST(Tensor, MatchesLoopOracle) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexMatrix a = gaussian_matrix(2, seed);
        const ComplexMatrix b = gaussian_matrix(3, seed + 100);
        EXPECT_EQ(tensor(a, b), kron_loops(a, b));
        EXPECT_EQ(tensor(b, a), kron_loops(b, a));
    }
}

TEST(DensityMatrix, ValidatesInvariants) {
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(4), SubsystemDims{2, 3}), DimMismatch);
    EXPECT_THROW(DensityMatrix(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}), NotHermitian);
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), NotNormalized);
    EXPECT_THROW(DensityMatrix(ComplexMatrix{{1.2, 0.0}, {0.0, -0.2}}), NotPSD);
    EXPECT_NO_THROW(DensityMatrix(ComplexMatrix{{1.0 + 5e-11, 0.0}, {0.0, -5e-11}}));
    EXPECT_THROW(SubsystemDims({2, 0}), BadParameter);
}

TEST(PartialTrace, ProductStateFactorises) {
    const DensityMatrix a = random_density(2, 1);
    const DensityMatrix b = random_density(3, 2);
    const DensityMatrix ab = tensor(a, b);
    EXPECT_LE(max_abs_diff(partial_trace(ab, {0}).matrix(), a.matrix()), 1e-14);
    EXPECT_LE(max_abs_diff(partial_trace(ab, {1}).matrix(), b.matrix()), 1e-14);
    EXPECT_EQ(partial_trace(ab, {1}).dims(), SubsystemDims{3});
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
    const DensityMatrix bell = density_from_ket(max_entangled(2));
    EXPECT_LE(max_abs_diff(partial_trace(bell, {1}).matrix(), DensityMatrix::maximally_mixed(2).matrix()), 1e-15);
    EXPECT_LE(max_abs_diff(partial_trace(bell, {0}).matrix(), DensityMatrix::maximally_mixed(2).matrix()), 1e-15);
}

TEST(PartialTrace, KeepsOriginalOrderAndRejectsBadIndices) {
    const DensityMatrix a = random_density(2, 3);
    const DensityMatrix b = random_density(3, 4);
    const DensityMatrix c = random_density(2, 5);
    const DensityMatrix abc = tensor(tensor(a, b), c);
    const DensityMatrix ac = partial_trace(abc, {2, 0});
    EXPECT_EQ(ac.dims(), (SubsystemDims{2, 2}));
    EXPECT_LE(max_abs_diff(ac.matrix(), tensor(a, c).matrix()), 1e-14);
    EXPECT_THROW(partial_trace(abc, {3}), IndexOutOfRange);
    EXPECT_THROW(partial_trace(abc, {0, 0}), BadParameter);
    EXPECT_THROW(partial_trace(abc, {}), BadParameter);
}

TEST(PartialTrace, ResultIsValidDensityMatrix) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const DensityMatrix rho(random_density(12, seed).matrix(), SubsystemDims{2, 3, 2});
        for (auto keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
            const DensityMatrix r = partial_trace(rho, keep);
            EXPECT_LE(std::abs(r.matrix().trace() - 1.0), 1e-12);
            EXPECT_LE(r.matrix().hermiticity_error(), 1e-12);
            EXPECT_GE(herm_eig(r.matrix()).values.back(), -1e-12);
        }
    }
}

TEST(HermEig, TrivialSpectra) {
    EXPECT_EQ(herm_eig(ComplexMatrix::identity(2)).values, (std::vector<double>{1.0, 1.0}));
    const auto x = herm_eig(pauli_x());
    EXPECT_NEAR(x.values[0], 1.0, 1e-15);
    EXPECT_NEAR(x.values[1], -1.0, 1e-15);
}

TEST(HermEig, ReconstructsRandomHermitian) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ComplexMatrix m = testing::hermitian_part(gaussian_matrix(8, seed));
        const auto eig = herm_eig(m);
        ASSERT_EQ(eig.values.size(), 8u);
        EXPECT_TRUE(std::is_sorted(eig.values.rbegin(), eig.values.rend()));
        std::vector<cplx> diag(eig.values.begin(), eig.values.end());
        const ComplexMatrix rebuilt = eig.vectors * ComplexMatrix::diagonal(diag) * eig.vectors.adjoint();
        EXPECT_LE(max_abs_diff(rebuilt, m), 1e-9);
        EXPECT_LE(max_abs_diff(eig.vectors.adjoint() * eig.vectors, ComplexMatrix::identity(8)), 1e-9);
    }
}

TEST(HermEig, RejectsNonHermitian) {
    EXPECT_THROW(herm_eig(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), NotHermitian);
    EXPECT_NO_THROW(herm_eig(ComplexMatrix{{1.0, 1.0 + 1e-8}, {1.0, 1.0}}));
}

TEST(PsdSqrt, Examples) {
    const ComplexMatrix r = psd_sqrt(DensityMatrix::maximally_mixed(2));
    EXPECT_LE(max_abs_diff(r, ComplexMatrix::identity(2) * (1.0 / std::numbers::sqrt2)), 1e-15);
    EXPECT_LE(max_abs_diff(psd_sqrt(projector(2, 0)), projector(2, 0).matrix()), 1e-15);
}

TEST(PsdSqrt, SquaresBackToInput) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const DensityMatrix rho = random_density(2 + seed % 5, seed);
        const ComplexMatrix r = psd_sqrt(rho);
        EXPECT_LE(max_abs_diff(r * r, rho.matrix()), 1e-9);
        EXPECT_LE(r.hermiticity_error(), 1e-12);
    }
}

TEST(PsdSqrt, ClampsRoundOffAndRejectsNegative) {
    const ComplexMatrix tiny{{1.0, 0.0}, {0.0, -5e-11}};
    EXPECT_EQ(psd_sqrt(tiny)(1, 1), 0.0);
    EXPECT_THROW(psd_sqrt(ComplexMatrix{{1.0, 0.0}, {0.0, -1e-6}}), NotPSD);
}

TEST(TraceNorm, Examples) {
    EXPECT_NEAR(trace_norm(ComplexMatrix::identity(4)), 4.0, 1e-14);
    ComplexMatrix off(2);
    off(0, 1) = 1.0;
    EXPECT_NEAR(trace_norm(off), 1.0, 1e-15);
    EXPECT_EQ(trace_norm(ComplexMatrix(3)), 0.0);
}

TEST(TraceNorm, MatchesSvdOracle) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = seed % 2 == 0 ? 4 : 2 + seed % 7;
        const ComplexMatrix m = gaussian_matrix(n, seed);
        EXPECT_NEAR(trace_norm(m), svd_trace_norm(m), 1e-9) << "seed " << seed;
        const ComplexMatrix h = testing::hermitian_part(m);
        EXPECT_NEAR(trace_norm(h), svd_trace_norm(h), 1e-9) << "seed " << seed;
    }
}

TEST(TraceNorm, RankDeficientNonHermitian) {
    const ComplexMatrix a = gaussian_matrix(4, 7);
    ComplexMatrix low = ComplexMatrix::outer(std::vector<cplx>{1, 2, 0, cplx(0, 1)}, std::vector<cplx>{0.5, 0, 1, 1});
    EXPECT_NEAR(trace_norm(low), svd_trace_norm(low), 1e-12);
    EXPECT_NEAR(trace_norm(a * low), svd_trace_norm(a * low), 1e-10);
}

TEST(TraceNorm, UnitarilyInvariant) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = 2 + seed % 4;
        const ComplexMatrix m = gaussian_matrix(n, seed);
        const ComplexMatrix u = random_unitary(n, seed + 1000).matrix();
        const ComplexMatrix v = random_unitary(n, seed + 2000).matrix();
        EXPECT_NEAR(trace_norm(u * m * v), trace_norm(m), 1e-9);
    }
}

TEST(TraceDistance, Examples) {
    const DensityMatrix rho = random_density(3, 11);
    EXPECT_EQ(trace_distance(rho, rho), 0.0);
    EXPECT_NEAR(trace_distance(projector(2, 0), projector(2, 1)), 1.0, 1e-15);
    EXPECT_THROW(trace_distance(projector(2, 0), projector(3, 0)), DimMismatch);
}

TEST(TraceDistance, SymmetricAndBounded) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const DensityMatrix a = random_density(3, 2 * seed);
        const DensityMatrix b = random_density(3, 2 * seed + 1);
        const double d = trace_distance(a, b);
        EXPECT_DOUBLE_EQ(d, trace_distance(b, a));
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0);
    }
}

TEST(Fidelity, Examples) {
    const DensityMatrix rho = random_density(3, 12);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
    EXPECT_NEAR(fidelity(projector(2, 0), projector(2, 1)), 0.0, 1e-15);
    EXPECT_THROW(fidelity(projector(2, 0), projector(3, 0)), DimMismatch);
}

TEST(Fidelity, PureStatesGiveOverlapModulus) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Ket psi = random_ket(3, seed);
        const Ket phi = random_ket(3, seed + 500);
        cplx overlap = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            overlap += std::conj(psi[i]) * phi[i];
        }
        EXPECT_NEAR(fidelity(density_from_ket(psi), density_from_ket(phi)), std::abs(overlap), 1e-7);
    }
}

TEST(Fidelity, SymmetricWithinTolerance) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const DensityMatrix a = random_density(4, 3 * seed);
        const DensityMatrix b = random_density(4, 3 * seed + 1);
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-9);
    }
}

TEST(Properties, FuchsBoundOnRandomPairs) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const std::size_t d = 2 + seed % 3;
        const DensityMatrix a = random_density(d, 7 * seed);
        const DensityMatrix b = random_density(d, 7 * seed + 3);
        const double f = fidelity(a, b);
        const double t = trace_distance(a, b);
        EXPECT_LE(t, std::sqrt(1.0 - f * f) + 1e-9) << "seed " << seed;
        EXPECT_GE(t, 1.0 - f - 1e-9) << "seed " << seed;
    }
}

TEST(Properties, ContractivityUnderPartialTrace) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DensityMatrix rho(random_density(6, 2 * seed).matrix(), SubsystemDims{2, 3});
        const DensityMatrix sigma(random_density(6, 2 * seed + 1).matrix(), SubsystemDims{2, 3});
        const double full = trace_distance(rho, sigma);
        EXPECT_LE(trace_distance(partial_trace(rho, {0}), partial_trace(sigma, {0})), full + 1e-9);
        EXPECT_LE(trace_distance(partial_trace(rho, {1}), partial_trace(sigma, {1})), full + 1e-9);
    }
}

TEST(Properties, GlobalUnitaryInvariance) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t d = 2 + seed % 3;
        const DensityMatrix a = random_density(d, 5 * seed);
        const DensityMatrix b = random_density(d, 5 * seed + 1);
        const ComplexMatrix u = random_unitary(d, 5 * seed + 2).matrix();
        const DensityMatrix ua(u * a.matrix() * u.adjoint(), 1e-9);
        const DensityMatrix ub(u * b.matrix() * u.adjoint(), 1e-9);
        EXPECT_NEAR(trace_distance(ua, ub), trace_distance(a, b), 1e-9);
        EXPECT_NEAR(fidelity(ua, ub), fidelity(a, b), 1e-9);
    }
}

}  // namespace
}  // namespace whichway
