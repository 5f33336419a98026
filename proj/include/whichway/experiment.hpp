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

// Two-path which-way experiment engine.
//
// The quanton path Q (two levels) and spin S are prepared in rho_QS, the
// detector D (optionally entangled with an ancilla D') in detector_in. The
// path-controlled interaction
//
//     U_QSD = |0><0|_Q (x) U0_SD + |1><1|_Q (x) U1_SD      (x I_D')
//
// never moves the quanton between arms. From the final state the engine
// reads off the path-conditioned detector states and the distinguishability
// and visibility measures:
//
//   D    trace distance of the detector-only path states
//   D_E  trace distance of the detector-ancilla path states
//   V_E  fidelity of the detector-ancilla path states
//   V_G  d_S || (1 (x) Lambda_01)[(I (x) sqrt rho_S0) |Phi+><Phi+| (I (x) sqrt rho_S1)] ||_1

#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "whichway/channels.hpp"
#include "whichway/parallel.hpp"
#include "whichway/qmatrix.hpp"
#include "whichway/states.hpp"

namespace whichway {

inline constexpr double kReportTolerance = 1e-9;

struct ExperimentConfig {
    /// Either spin amplitudes (qubit spin) or an explicit Q (x) S state.
    std::variant<SpinPreparation, DensityMatrix> spin;
    Unitary u0_sd;
    Unitary u1_sd;
    /// State of D, or of D (x) D' when ancilla_present.
    DensityMatrix detector_in;
    bool ancilla_present = true;
    std::size_t d_s = 2;
    std::size_t d_d = 2;

    /// Throws DimMismatch / NotNormalized when the pieces do not fit.
    void validate() const;
    DensityMatrix rho_qs() const;
};

struct PathStates {
    DensityMatrix path0;
    DensityMatrix path1;
};

struct InequalityMargins {
    double dv_extended;     // 1 - D^2 - V_E^2
    double dv_generalized;  // 1 - D^2 - V_G^2
    double fuchs;           // sqrt(1 - V_E^2) - D_E
};

struct ExperimentReport {
    PathStates rho_d;
    std::optional<PathStates> rho_dda;
    DensityMatrix rho_fin_qs;
    double distinguishability;
    double extended_distinguishability;
    double extended_visibility;
    double generalized_visibility;
    InequalityMargins margins;

    /// True when every scalar lies in [-tol, 1 + tol] and every margin is
    /// at least -tol.
    bool within_bounds(double tol = kReportTolerance) const;
};

/// U_QSD (x I_D') conjugation of rho_QS (x) detector_in. The result carries
/// dims {2, d_S, d_D} or {2, d_S, d_D, d_D'}.
DensityMatrix evolve(const ExperimentConfig &config);

/// rho^(i) = 2 <i|_Q Tr_S[final] |i>_Q, keeping the listed detector-side
/// factors (indices into final.dims(), each >= 2). Throws NotNormalized if a
/// path carries weight other than 1/2 (beyond 1e-9).
PathStates path_states(const DensityMatrix &final_state, std::span<const std::size_t> detector_factors);
PathStates path_states(const DensityMatrix &final_state, std::initializer_list<std::size_t> detector_factors);

double distinguishability(const PathStates &states);
double extended_visibility(const DensityMatrix &rho0, const DensityMatrix &rho1);

/// |Tr[U0 rho U1^dag]| for a spin-free detector interaction.
double plain_visibility(const Unitary &u0_d, const Unitary &u1_d, const DensityMatrix &detector_in);

double generalized_visibility(const BlockChannel &block, const DensityMatrix &rho_s0, const DensityMatrix &rho_s1);

ExperimentReport run_experiment(const ExperimentConfig &config);

/// Runs every config; reports[i] corresponds to configs[i] regardless of
/// execution order.
std::vector<ExperimentReport> run_batch(std::span<const ExperimentConfig> configs,
                                        Execution exec = Execution::parallel);

/// Random qubit-spin / qubit-detector experiment: Haar-like interaction
/// unitaries, random per-path spin kets, Bell detector-ancilla input.
ExperimentConfig random_experiment(std::uint64_t seed);

}  // namespace whichway
