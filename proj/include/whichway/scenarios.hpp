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

// Built-in interaction scenarios with closed-form reference values.
//
// All three use a qubit spin, a qubit detector and the Bell detector-ancilla
// input (|00> + |11>)/sqrt 2:
//
//   example1  CNOT-like swaps of the detector conditioned on spin and path;
//             parameters are the four spin amplitudes a_{path,spin}.
//   example2  anti-diagonal interactions differing by a phase phi.
//   example3  U_i = exp(-i theta_i/2 sigma_z (x) sigma_x), uniform spin.

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "whichway/experiment.hpp"
#include "whichway/parallel.hpp"

namespace whichway {

struct Example1 {
    cplx a00;
    cplx a01;
    cplx a10;
    cplx a11;

    /// Real amplitudes with |a00| = abs_a00 and |a11| = abs_a11.
    static Example1 from_moduli(double abs_a00, double abs_a11);
};

struct Example2 {
    double phi_rad;
};

struct Example3 {
    double theta0_rad;
    double theta1_rad;
};

using Scenario = std::variant<Example1, Example2, Example3>;

std::string_view scenario_name(const Scenario &s);

struct OracleValues {
    double distinguishability;
    double extended_distinguishability;
    double extended_visibility;
    double generalized_visibility;
};

/// Interaction unitaries on spin (x) detector, basis |s d> ordered
/// {00, 01, 10, 11}.
Unitary example1_unitary(std::size_t path);
Unitary example2_unitary(std::size_t path, double phi_rad);
Unitary example3_unitary(double theta_rad);

/// Throws BadParameter on non-finite parameters or unnormalized amplitudes.
ExperimentConfig build(const Scenario &s);

OracleValues oracle(const Scenario &s);

struct ScenarioCheck {
    OracleValues simulated;
    OracleValues expected;
    double max_deviation;
    bool passed;
};

/// Simulates build(s) and compares every quantity with oracle(s).
ScenarioCheck verify(const Scenario &s, double tol);

enum class GridScenario { example1, example3 };

struct GridRow {
    double p1;
    double p2;
    double extended_distinguishability;
    double extended_visibility;
    double sum_sq;
};

/// steps x steps sweep over (|a00|, |a11|) in [0, 1]^2 for example1 or
/// (theta0, theta1) in [0, pi]^2 for example3. Rows are ordered with p1 as
/// the slow index.
std::vector<GridRow> sweep_grid(GridScenario scenario, std::size_t steps, Execution exec = Execution::parallel);

}  // namespace whichway
