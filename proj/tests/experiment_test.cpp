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

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "whichway/experiment.hpp"
#include "whichway/scenarios.hpp"

namespace whichway {
namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix bell_state() { return density_from_ket(max_entangled(2)); }

ExperimentConfig identity_config(SpinPreparation prep) {
    return {prep, Unitary::identity(4), Unitary::identity(4), bell_state()};
}

TEST(ExperimentConfig, ValidatesDimensions) {
    ExperimentConfig bad = identity_config({});
    bad.detector_in = DensityMatrix::maximally_mixed(2);
    EXPECT_THROW(bad.validate(), DimMismatch);
    bad.ancilla_present = false;
    EXPECT_NO_THROW(bad.validate());
    ExperimentConfig wrong_unitary{SpinPreparation{}, Unitary::identity(6), Unitary::identity(6), bell_state()};
    EXPECT_THROW(wrong_unitary.validate(), DimMismatch);
    ExperimentConfig unnormalised = identity_config({1.0, 1.0, 0.0, 1.0});
    EXPECT_THROW(unnormalised.validate(), NotNormalized);
}

TEST(Evolve, IdentityLeavesStateUnchanged) {
    const ExperimentConfig c = identity_config({0.6, 0.8, cplx(0, 1), 0.0});
    const DensityMatrix initial = tensor(c.rho_qs(), c.detector_in);
    const DensityMatrix final_state = evolve(c);
    EXPECT_EQ(final_state.dims(), (SubsystemDims{2, 2, 2, 2}));
    EXPECT_LE(max_abs_diff(final_state.matrix(), initial.matrix()), 1e-15);
}

TEST(Evolve, ExampleOneFinalStateIsPureWithKnownReduction) {
    const cplx a00 = std::polar(0.6, 0.3);
    const cplx a01 = std::polar(0.8, -1.1);
    const cplx a10 = std::polar(0.28, 2.0);
    const cplx a11 = std::polar(0.96, 0.4);
    const ExperimentConfig c = build(Example1{a00, a01, a10, a11});
    const DensityMatrix f = evolve(c);
    EXPECT_NEAR((f.matrix() * f.matrix()).trace().real(), 1.0, 1e-12);

    const ComplexMatrix qs = partial_trace(f, {0, 1}).matrix();
    // Basis |Q S>: index 2 Q + S.
    ComplexMatrix want(4);
    want(0, 0) = std::norm(a00) / 2;
    want(1, 1) = std::norm(a01) / 2;
    want(2, 2) = std::norm(a10) / 2;
    want(3, 3) = std::norm(a11) / 2;
    want(0, 3) = a00 * std::conj(a11) / 2.0;
    want(1, 2) = a01 * std::conj(a10) / 2.0;
    want(3, 0) = std::conj(a00) * a11 / 2.0;
    want(2, 1) = std::conj(a01) * a10 / 2.0;
    EXPECT_LE(max_abs_diff(qs, want), 1e-15);
}

TEST(PathStates, ExampleOneMatrices) {
    const auto e = Example1::from_moduli(0.6, 0.28);
    const ExperimentReport r = run_experiment(build(e));
    ASSERT_TRUE(r.rho_dda.has_value());
    const double p00 = 0.36, p01 = 0.64, p11 = 0.28 * 0.28, p10 = 1 - p11;
    auto pattern = [](double corner, double centre) {
        ComplexMatrix m(4);
        m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = corner / 2;
        m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = centre / 2;
        return m;
    };
    EXPECT_LE(max_abs_diff(r.rho_dda->path0.matrix(), pattern(p00, p01)), 1e-15);
    EXPECT_LE(max_abs_diff(r.rho_dda->path1.matrix(), pattern(p11, p10)), 1e-15);
    const ComplexMatrix half = DensityMatrix::maximally_mixed(2).matrix();
    EXPECT_LE(max_abs_diff(r.rho_d.path0.matrix(), half), 1e-15);
    EXPECT_LE(max_abs_diff(r.rho_d.path1.matrix(), half), 1e-15);
}

TEST(PathStates, ExampleThreeMatrices) {
    const double t0 = 0.8, t1 = 2.1;
    const ExperimentReport r = run_experiment(build(Example3{t0, t1}));
    for (std::size_t path = 0; path < 2; ++path) {
        const double t = path == 0 ? t0 : t1;
        const double c2 = std::pow(std::cos(t / 2), 2) / 2;
        const double s2 = std::pow(std::sin(t / 2), 2) / 2;
        const ComplexMatrix &m = path == 0 ? r.rho_dda->path0.matrix() : r.rho_dda->path1.matrix();
        for (auto [i, j] : {std::pair{0, 0}, {0, 3}, {3, 0}, {3, 3}}) {
            EXPECT_NEAR(std::abs(m(i, j)), c2, 1e-15);
        }
        for (auto [i, j] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
            EXPECT_NEAR(std::abs(m(i, j)), s2, 1e-15);
        }
    }
}

TEST(PathStates, EqualInteractionsGiveEqualStates) {
    const Unitary u = random_unitary(4, 3);
    const ExperimentConfig c{SpinPreparation{0.6, 0.8, 0.6, 0.8}, u, u,
                             tensor(random_density(2, 1), random_density(2, 2))};
    const ExperimentReport r = run_experiment(c);
    EXPECT_LE(max_abs_diff(r.rho_d.path0.matrix(), r.rho_d.path1.matrix()), 1e-12);
}

TEST(PathStates, RejectsUnequalPathWeights) {
    const DensityMatrix skewed(ComplexMatrix::diagonal(std::vector<cplx>{0.7, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.3}),
                               SubsystemDims{2, 2, 2});
    EXPECT_THROW(path_states(skewed, {2}), NotNormalized);
    EXPECT_THROW(path_states(skewed, {3}), IndexOutOfRange);
}

TEST(Distinguishability, Examples) {
    EXPECT_EQ(run_experiment(build(Example1::from_moduli(0.3, 0.9))).distinguishability, 0.0);
    EXPECT_NEAR(run_experiment(build(Example1::from_moduli(1.0, 0.0))).extended_distinguishability, 1.0, 1e-15);
    EXPECT_NEAR(run_experiment(build(Example3{0.0, kPi})).extended_distinguishability, 1.0, 1e-15);
}

TEST(TraceDistance, ExampleTwoAtQuarterTurn) {
    const ExperimentReport r = run_experiment(build(Example2{kPi / 2}));
    EXPECT_NEAR(trace_distance(r.rho_dda->path0, r.rho_dda->path1), std::numbers::sqrt2 / 2, 1e-15);
    EXPECT_NEAR(fidelity(r.rho_dda->path0, r.rho_dda->path1), std::numbers::sqrt2 / 2, 1e-12);
}

TEST(ExtendedVisibility, Examples) {
    const auto e = Example1::from_moduli(0.6, 0.28);
    const ExperimentReport r1 = run_experiment(build(e));
    EXPECT_NEAR(extended_visibility(r1.rho_dda->path0, r1.rho_dda->path1),
                0.6 * 0.28 + std::sqrt(1 - 0.36) * std::sqrt(1 - 0.28 * 0.28), 1e-12);
    const ExperimentReport r2 = run_experiment(build(Example2{1.3}));
    EXPECT_NEAR(r2.extended_visibility, std::abs(std::cos(0.65)), 1e-12);
    const DensityMatrix rho = random_density(4, 1);
    EXPECT_NEAR(extended_visibility(rho, rho), 1.0, 1e-9);
}

TEST(PlainVisibility, Examples) {
    const DensityMatrix rho = random_density(2, 5);
    const Unitary u = random_unitary(2, 6);
    EXPECT_NEAR(plain_visibility(u, u, rho), 1.0, 1e-14);
    const DensityMatrix zero = density_from_ket(basis_ket(2, 0));
    EXPECT_NEAR(plain_visibility(Unitary::identity(2), Unitary{testing::pauli_x()}, zero), 0.0, 1e-15);
    for (double phi : {0.0, 0.4, 1.7, kPi, 4.0}) {
        const Unitary phase(ComplexMatrix{{1.0, 0.0}, {0.0, std::exp(cplx(0, phi))}});
        // Tr[I (I/2) diag(1, e^{-i phi})] evaluated by hand.
        const double want = std::abs(0.5 * (1.0 + std::exp(cplx(0, -phi))));
        EXPECT_NEAR(plain_visibility(Unitary::identity(2), phase, DensityMatrix::maximally_mixed(2)), want, 1e-15);
    }
    EXPECT_THROW(plain_visibility(Unitary::identity(2), Unitary::identity(2), random_density(3, 1)), DimMismatch);
}

TEST(PlainVisibility, ComplementaryWithDistinguishability) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Unitary u0 = random_unitary(2, 3 * seed);
        const Unitary u1 = random_unitary(2, 3 * seed + 1);
        const DensityMatrix rho = random_density(2, 3 * seed + 2);
        const DensityMatrix r0(u0.matrix() * rho.matrix() * u0.matrix().adjoint(), 1e-9);
        const DensityMatrix r1(u1.matrix() * rho.matrix() * u1.matrix().adjoint(), 1e-9);
        const double d = trace_distance(r0, r1);
        const double v = plain_visibility(u0, u1, rho);
        EXPECT_LE(d * d + v * v, 1.0 + 1e-9);
    }
}

TEST(GeneralizedVisibility, SpecialChannels) {
    const SuperOp id = special_channel(SpecialChannelKind::identity, 2);
    const SuperOp t = special_channel(SpecialChannelKind::transpose, 2);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const DensityMatrix a = random_density(2, 2 * seed);
        const DensityMatrix b = random_density(2, 2 * seed + 1);
        EXPECT_NEAR(generalized_visibility(BlockChannel(id, id, id, id), a, b), 1.0, 1e-10);
        const SuperOp c = special_channel(SpecialChannelKind::constant, 2, random_density(2, seed + 500).matrix());
        EXPECT_NEAR(generalized_visibility(BlockChannel(c, c, c, c), a, b), fidelity(a, b), 1e-9);
    }
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    EXPECT_NEAR(generalized_visibility(BlockChannel(t, t, t, t), mixed, mixed), 1.0, 1e-10);
    const DensityMatrix mixed3 = DensityMatrix::maximally_mixed(3);
    const SuperOp t3 = special_channel(SpecialChannelKind::transpose, 3);
    EXPECT_NEAR(generalized_visibility(BlockChannel(t3, t3, t3, t3), mixed3, mixed3), 1.0, 1e-10);
    EXPECT_THROW(generalized_visibility(BlockChannel(id, id, id, id), mixed3, mixed3), DimMismatch);
}

TEST(RunExperiment, Examples) {
    const auto balanced = run_experiment(build(Example1::from_moduli(1 / std::numbers::sqrt2, 1 / std::numbers::sqrt2)));
    EXPECT_EQ(balanced.extended_distinguishability, 0.0);
    EXPECT_NEAR(balanced.extended_visibility, 1.0, 1e-12);

    const auto opposite = run_experiment(build(Example2{kPi}));
    EXPECT_NEAR(opposite.extended_distinguishability, 1.0, 1e-15);
    EXPECT_NEAR(opposite.extended_visibility, 0.0, 1e-12);
    EXPECT_NEAR(opposite.generalized_visibility, 0.0, 1e-12);

    const auto same = run_experiment(build(Example3{1.1, 1.1}));
    EXPECT_EQ(same.extended_distinguishability, 0.0);
    EXPECT_NEAR(same.extended_visibility, 1.0, 1e-12);
    EXPECT_TRUE(same.within_bounds());
}

TEST(RunExperiment, WithoutAncillaExtendedFieldsReduceToDetector) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        ExperimentConfig c = random_experiment(seed);
        c.detector_in = random_density(2, seed + 77);
        c.ancilla_present = false;
        const ExperimentReport r = run_experiment(c);
        EXPECT_FALSE(r.rho_dda.has_value());
        EXPECT_EQ(r.extended_distinguishability, r.distinguishability);
        EXPECT_NEAR(r.extended_visibility, fidelity(r.rho_d.path0, r.rho_d.path1), 1e-12);
        EXPECT_TRUE(r.within_bounds());
    }
}

TEST(RunExperiment, AcceptsExplicitQuantonSpinState) {
    const auto prep = SpinPreparation{0.6, 0.8, cplx(0, 0.28), 0.96};
    ExperimentConfig from_amplitudes = build(Example1{prep.a00, prep.a01, prep.a10, prep.a11});
    ExperimentConfig from_state = from_amplitudes;
    from_state.spin = density_from_ket(quanton_spin_state(prep));
    const auto a = run_experiment(from_amplitudes);
    const auto b = run_experiment(from_state);
    EXPECT_NEAR(a.extended_distinguishability, b.extended_distinguishability, 1e-15);
    EXPECT_NEAR(a.generalized_visibility, b.generalized_visibility, 1e-15);
}

TEST(TradeOffProperties, RandomExperiments) {
    std::vector<ExperimentConfig> configs;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        configs.push_back(random_experiment(seed));
    }
    const auto reports = run_batch(configs);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto &r = reports[i];
        const double d = r.distinguishability;
        EXPECT_LE(d * d + r.extended_visibility * r.extended_visibility, 1.0 + 1e-9) << i;
        EXPECT_LE(d * d + r.generalized_visibility * r.generalized_visibility, 1.0 + 1e-9) << i;
        EXPECT_LE(r.extended_distinguishability,
                  std::sqrt(std::max(0.0, 1.0 - r.extended_visibility * r.extended_visibility)) + 1e-9)
            << i;
        EXPECT_LE(d, r.extended_distinguishability + 1e-9) << i;
        EXPECT_TRUE(r.within_bounds()) << i;
    }
}

TEST(RunBatch, ParallelMatchesSerialExactly) {
    std::vector<ExperimentConfig> configs;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        configs.push_back(random_experiment(seed));
    }
    const auto serial = run_batch(configs, Execution::serial);
    const auto parallel = run_batch(configs, Execution::parallel);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].extended_distinguishability, parallel[i].extended_distinguishability);
        EXPECT_EQ(serial[i].extended_visibility, parallel[i].extended_visibility);
        EXPECT_EQ(serial[i].generalized_visibility, parallel[i].generalized_visibility);
        EXPECT_EQ(serial[i].rho_fin_qs.matrix(), parallel[i].rho_fin_qs.matrix());
    }
}

}  // namespace
}  // namespace whichway
