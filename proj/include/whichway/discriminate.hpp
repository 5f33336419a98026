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
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "whichway/channels.hpp"
#include "whichway/experiment.hpp"
#include "whichway/parallel.hpp"
#include "whichway/states.hpp"

namespace whichway {

struct OptimizerOptions {
    int starts = 32;
    /// Coordinate sweeps allowed per start.
    int budget = 400;
    double initial_step = 0.5;
    double min_step = 1e-8;
    std::uint64_t seed = 0;
    Execution exec = Execution::parallel;
};

/// Pure state from 2*dim - 2 real parameters: dim - 1 hyperspherical angles
/// for the moduli followed by dim - 1 relative phases. The first amplitude
/// is kept real and non-negative.
Ket ket_from_parameters(const SubsystemDims &dims, std::span<const double> params);

struct PureStateOptimum {
    double value = 0.0;
    std::vector<double> params;
    int iterations = 0;  // total coordinate sweeps over all starts
    bool converged = false;  // the winning start reached min_step
};

/// Multi-start derivative-free pattern search maximizing `objective` over
/// pure states on `dims`. Start k draws its initial point from a generator
/// seeded with (options.seed, k); the winner is the highest value, ties
/// going to the lowest start index, so serial and parallel runs agree.
PureStateOptimum maximize_over_pure_states(const SubsystemDims &dims,
                                           const std::function<double(const Ket &)> &objective,
                                           const OptimizerOptions &options);

struct DiscriminationResult {
    double unassisted = 0.0;
    std::optional<Ket> best_input;
    double assisted_bell = 0.0;
    std::optional<double> assisted_optimized;
    std::optional<Ket> best_assisted_input;
    int iterations = 0;
    bool converged = false;
};

/// max over pure |psi> of 1/2 || Phi0(psi) - Phi1(psi) ||_1.
DiscriminationResult unassisted_distance(const StinespringChannel &ch0, const StinespringChannel &ch1,
                                         const OptimizerOptions &options = {});

/// 1/2 || (Phi0 (x) 1 - Phi1 (x) 1)(|Phi+><Phi+|) ||_1 with an ancilla of the
/// system's dimension; with `optimize_input` also maximized over all pure
/// system-ancilla inputs.
DiscriminationResult assisted_distance(const StinespringChannel &ch0, const StinespringChannel &ch1,
                                       bool optimize_input, const OptimizerOptions &options = {});

/// Both of the above in one result.
DiscriminationResult discriminate(const StinespringChannel &ch0, const StinespringChannel &ch1, bool optimize_input,
                                  const OptimizerOptions &options = {});

/// 1/2 || Phi0(rho) - Phi1(rho) ||_1 for a fixed input.
double fixed_input_distance(const StinespringChannel &ch0, const StinespringChannel &ch1, const DensityMatrix &rho);

/// The detector channels Phi_i(rho_D) = Tr_S[U_i (rho_Si (x) rho_D) U_i^dag]
/// of an experiment, with the path spin state as the environment.
std::pair<StinespringChannel, StinespringChannel> path_channels(const ExperimentConfig &config);

}  // namespace whichway
