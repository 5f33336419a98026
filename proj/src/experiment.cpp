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

#include "whichway/experiment.hpp"

#include <cmath>
#include <string>

namespace whichway {

namespace {

constexpr double kPathWeightTolerance = 1e-9;

// |0><0| (x) u0 + |1><1| (x) u1
ComplexMatrix path_controlled(const ComplexMatrix &u0, const ComplexMatrix &u1) {
    const std::size_t n = u0.dim();
    ComplexMatrix u(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            u(i, j) = u0(i, j);
            u(n + i, n + j) = u1(i, j);
        }
    }
    return u;
}

std::size_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer
    std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + stream + 0x632BE59BD9B4E019ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
}

}  // namespace

void ExperimentConfig::validate() const {
    const std::size_t sd = d_s * d_d;
    if (u0_sd.dim() != sd || u1_sd.dim() != sd) {
        throw DimMismatch("ExperimentConfig: interaction unitaries must have dim d_S*d_D = " + std::to_string(sd));
    }
    const std::size_t want_det = ancilla_present ? d_d * d_d : d_d;
    if (detector_in.dim() != want_det || detector_in.dims()[0] != d_d) {
        throw DimMismatch("ExperimentConfig: detector_in must have dim " + std::to_string(want_det) +
                          " with D as its first factor");
    }
    if (const auto *prep = std::get_if<SpinPreparation>(&spin)) {
        if (d_s != 2) {
            throw DimMismatch("ExperimentConfig: spin amplitudes describe a qubit spin, d_S = " + std::to_string(d_s));
        }
        prep->validate();
    } else {
        const auto &rho = std::get<DensityMatrix>(spin);
        if (rho.dim() != 2 * d_s || rho.dims()[0] != 2) {
            throw DimMismatch("ExperimentConfig: rho_QS must live on a two-path (x) d_S space");
        }
    }
}

DensityMatrix ExperimentConfig::rho_qs() const {
    if (const auto *prep = std::get_if<SpinPreparation>(&spin)) {
        return density_from_ket(quanton_spin_state(*prep));
    }
    const auto &rho = std::get<DensityMatrix>(spin);
    return DensityMatrix(rho.matrix(), SubsystemDims({2, d_s}), rho.tolerance());
}

bool ExperimentReport::within_bounds(double tol) const {
    for (double x : {distinguishability, extended_distinguishability, extended_visibility, generalized_visibility}) {
        if (!(x >= -tol && x <= 1.0 + tol)) {
            return false;
        }
    }
    return margins.dv_extended >= -tol && margins.dv_generalized >= -tol && margins.fuchs >= -tol;
}

DensityMatrix evolve(const ExperimentConfig &config) {
    config.validate();
    const DensityMatrix rho_qs = config.rho_qs();
    const ComplexMatrix u_qsd = path_controlled(config.u0_sd.matrix(), config.u1_sd.matrix());
    const std::size_t anc = config.detector_in.dim() / config.d_d;
    const ComplexMatrix u = anc > 1 ? tensor(u_qsd, ComplexMatrix::identity(anc)) : u_qsd;
    const ComplexMatrix initial = tensor(rho_qs.matrix(), config.detector_in.matrix());

    std::vector<std::size_t> dims{2, config.d_s, config.d_d};
    if (anc > 1) {
        dims.push_back(anc);
    }
    return DensityMatrix(u * initial * u.adjoint(), SubsystemDims(std::move(dims)));
}

PathStates path_states(const DensityMatrix &final_state, std::span<const std::size_t> detector_factors) {
    const auto &dims = final_state.dims();
    if (dims.size() < 3 || dims[0] != 2) {
        throw DimMismatch("path_states: expected a Q (x) S (x) D... state");
    }
    std::vector<std::size_t> keep{0};
    for (std::size_t f : detector_factors) {
        if (f < 2 || f >= dims.size()) {
            throw IndexOutOfRange("path_states: detector-side factor " + std::to_string(f));
        }
        keep.push_back(f);
    }
    if (keep.size() == 1) {
        throw BadParameter("path_states: no detector-side factor kept");
    }
    const DensityMatrix reduced = partial_trace(final_state, keep);
    const std::size_t n = reduced.dim() / 2;
    std::vector<std::size_t> det_dims(reduced.dims().values().begin() + 1, reduced.dims().values().end());

    auto block = [&](std::size_t path) {
        ComplexMatrix b(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                b(i, j) = reduced.matrix()(path * n + i, path * n + j);
            }
        }
        const double weight = b.trace().real();
        if (std::abs(weight - 0.5) > kPathWeightTolerance) {
            throw NotNormalized("path_states: path " + std::to_string(path) + " carries weight " +
                                std::to_string(weight) + "; only equiprobable paths are supported");
        }
        return DensityMatrix(b * cplx(2.0), SubsystemDims(det_dims), final_state.tolerance());
    };
    return PathStates{block(0), block(1)};
}

PathStates path_states(const DensityMatrix &final_state, std::initializer_list<std::size_t> detector_factors) {
    return path_states(final_state, std::span<const std::size_t>(detector_factors.begin(), detector_factors.size()));
}

double distinguishability(const PathStates &states) { return trace_distance(states.path0, states.path1); }

double extended_visibility(const DensityMatrix &rho0, const DensityMatrix &rho1) { return fidelity(rho0, rho1); }

double plain_visibility(const Unitary &u0_d, const Unitary &u1_d, const DensityMatrix &detector_in) {
    if (u0_d.dim() != detector_in.dim() || u1_d.dim() != detector_in.dim()) {
        throw DimMismatch("plain_visibility: unitaries and detector state differ in dimension");
    }
    return std::abs((u0_d.matrix() * detector_in.matrix() * u1_d.matrix().adjoint()).trace());
}

double generalized_visibility(const BlockChannel &block, const DensityMatrix &rho_s0, const DensityMatrix &rho_s1) {
    const std::size_t d = block.spin_dim();
    if (rho_s0.dim() != d || rho_s1.dim() != d) {
        throw DimMismatch("generalized_visibility: spin states must have dim " + std::to_string(d));
    }
    const ComplexMatrix id = ComplexMatrix::identity(d);
    const Ket phi = max_entangled(d);
    const ComplexMatrix phi_proj = ComplexMatrix::outer(phi.amplitudes(), phi.amplitudes());
    const ComplexMatrix sandwiched = tensor(id, psd_sqrt(rho_s0)) * phi_proj * tensor(id, psd_sqrt(rho_s1));

    // (1 (x) Lambda_01) acts block-wise: block (a, b) of the d^2 x d^2
    // operator is the second-factor operator paired with |a><b|.
    const SuperOp &lambda = block.block(0, 1);
    ComplexMatrix mapped(d * d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            ComplexMatrix sub(d);
            for (std::size_t k = 0; k < d; ++k) {
                for (std::size_t l = 0; l < d; ++l) {
                    sub(k, l) = sandwiched(a * d + k, b * d + l);
                }
            }
            const ComplexMatrix image = lambda.apply(sub);
            for (std::size_t k = 0; k < d; ++k) {
                for (std::size_t l = 0; l < d; ++l) {
                    mapped(a * d + k, b * d + l) = image(k, l);
                }
            }
        }
    }
    return static_cast<double>(d) * trace_norm(mapped);
}

ExperimentReport run_experiment(const ExperimentConfig &config) {
    const DensityMatrix final_state = evolve(config);
    const bool ancilla = final_state.dims().size() == 4;

    PathStates rho_d = path_states(final_state, {2});
    std::optional<PathStates> rho_dda;
    if (ancilla) {
        rho_dda = path_states(final_state, {2, 3});
    }
    const PathStates &extended = rho_dda ? *rho_dda : rho_d;

    const double d = distinguishability(rho_d);
    const double d_e = distinguishability(extended);
    const double v_e = extended_visibility(extended.path0, extended.path1);

    const DensityMatrix rho_qs = config.rho_qs();
    const BlockChannel block = extract_block_channel(config.u0_sd, config.u1_sd, config.detector_in);
    const double v_g = generalized_visibility(block, path_spin_state(rho_qs, 0), path_spin_state(rho_qs, 1));

    InequalityMargins margins{
        1.0 - d * d - v_e * v_e,
        1.0 - d * d - v_g * v_g,
        std::sqrt(std::max(0.0, 1.0 - v_e * v_e)) - d_e,
    };
    return ExperimentReport{
        std::move(rho_d), std::move(rho_dda), partial_trace(final_state, {0, 1}), d, d_e, v_e, v_g, margins,
    };
}

std::vector<ExperimentReport> run_batch(std::span<const ExperimentConfig> configs, Execution exec) {
    std::vector<std::optional<ExperimentReport>> slots(configs.size());
    for_each_index(exec, configs.size(), [&](std::size_t i) { slots[i] = run_experiment(configs[i]); });
    std::vector<ExperimentReport> out;
    out.reserve(slots.size());
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

ExperimentConfig random_experiment(std::uint64_t seed) {
    const Ket psi0 = random_ket(2, mix_seed(seed, 1));
    const Ket psi1 = random_ket(2, mix_seed(seed, 2));
    return ExperimentConfig{
        .spin = SpinPreparation{psi0[0], psi0[1], psi1[0], psi1[1]},
        .u0_sd = random_unitary(4, mix_seed(seed, 3)),
        .u1_sd = random_unitary(4, mix_seed(seed, 4)),
        .detector_in = density_from_ket(max_entangled(2)),
        .ancilla_present = true,
        .d_s = 2,
        .d_d = 2,
    };
}

}  // namespace whichway
