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

#include "whichway/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace whichway {

namespace {

const cplx kI(0.0, 1.0);

DensityMatrix bell_input() { return density_from_ket(max_entangled(2)); }

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_finite(std::initializer_list<double> xs) {
    for (double x : xs) {
        if (!std::isfinite(x)) {
            throw BadParameter("scenario parameter is not finite");
        }
    }
}

}  // namespace

Example1 Example1::from_moduli(double abs_a00, double abs_a11) {
    if (abs_a00 < 0.0 || abs_a00 > 1.0 || abs_a11 < 0.0 || abs_a11 > 1.0) {
        throw BadParameter("Example1::from_moduli: moduli must lie in [0, 1]");
    }
    return Example1{abs_a00, safe_sqrt(1.0 - abs_a00 * abs_a00), safe_sqrt(1.0 - abs_a11 * abs_a11), abs_a11};
}

std::string_view scenario_name(const Scenario &s) {
    return std::visit(overloaded{
                          [](const Example1 &) { return std::string_view("example1"); },
                          [](const Example2 &) { return std::string_view("example2"); },
                          [](const Example3 &) { return std::string_view("example3"); },
                      },
                      s);
}

Unitary example1_unitary(std::size_t path) {
    if (path == 0) {
        return Unitary(ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    }
    return Unitary(ComplexMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

Unitary example2_unitary(std::size_t path, double phi_rad) {
    const cplx e_plus = path == 0 ? 1.0 : std::polar(1.0, phi_rad);
    const cplx e_minus = path == 0 ? 1.0 : std::polar(1.0, -phi_rad);
    return Unitary(ComplexMatrix{{0, 0, 0, 1}, {0, 0, e_minus, 0}, {0, e_plus, 0, 0}, {1, 0, 0, 0}});
}

Unitary example3_unitary(double theta_rad) {
    // exp(-i t/2 Z(x)X) = cos(t/2) I - i sin(t/2) Z(x)X, since (Z(x)X)^2 = I.
    const ComplexMatrix zx{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}};
    return Unitary(ComplexMatrix::identity(4) * cplx(std::cos(theta_rad / 2)) +
                   zx * (-kI * std::sin(theta_rad / 2)));
}

ExperimentConfig build(const Scenario &s) {
    return std::visit(
        overloaded{
            [](const Example1 &e) {
                require_finite({e.a00.real(), e.a00.imag(), e.a01.real(), e.a01.imag(), e.a10.real(), e.a10.imag(),
                                e.a11.real(), e.a11.imag()});
                SpinPreparation prep{e.a00, e.a01, e.a10, e.a11};
                try {
                    prep.validate();
                } catch (const NotNormalized &err) {
                    throw BadParameter(std::string("example1: ") + err.what());
                }
                return ExperimentConfig{prep, example1_unitary(0), example1_unitary(1), bell_input(), true, 2, 2};
            },
            [](const Example2 &e) {
                require_finite({e.phi_rad});
                return ExperimentConfig{SpinPreparation{1.0, 0.0, 1.0, 0.0}, example2_unitary(0, e.phi_rad),
                                        example2_unitary(1, e.phi_rad), bell_input(), true, 2, 2};
            },
            [](const Example3 &e) {
                require_finite({e.theta0_rad, e.theta1_rad});
                const double h = 1.0 / std::numbers::sqrt2;
                return ExperimentConfig{SpinPreparation{h, h, h, h}, example3_unitary(e.theta0_rad),
                                        example3_unitary(e.theta1_rad), bell_input(), true, 2, 2};
            },
        },
        s);
}

OracleValues oracle(const Scenario &s) {
    return std::visit(overloaded{
                          [](const Example1 &e) {
                              const double m00 = std::abs(e.a00);
                              const double m11 = std::abs(e.a11);
                              const double p00 = m00 * m00;
                              const double p11 = m11 * m11;
                              const double d_e = p00 == p11 ? 0.0 : std::abs(p00 - p11);
                              // |a01| = sqrt(1 - |a00|^2) for a normalised preparation; the
                              // moduli are used directly to avoid cancellation near 1.
                              const double v_e = m00 * m11 + std::abs(e.a01) * std::abs(e.a10);
                              return OracleValues{0.0, d_e, v_e, v_e};
                          },
                          [](const Example2 &e) {
                              const double v = std::abs(std::cos(e.phi_rad / 2));
                              return OracleValues{0.0, std::abs(std::sin(e.phi_rad / 2)), v, v};
                          },
                          [](const Example3 &e) {
                              const double c0 = std::cos(e.theta0_rad / 2);
                              const double c1 = std::cos(e.theta1_rad / 2);
                              const double s0 = std::sin(e.theta0_rad / 2);
                              const double s1 = std::sin(e.theta1_rad / 2);
                              const double v = std::abs(c0 * c1) + std::abs(s0 * s1);
                              return OracleValues{0.0, std::abs(c0 * c0 - c1 * c1), v, v};
                          },
                      },
                      s);
}

ScenarioCheck verify(const Scenario &s, double tol) {
    if (!(tol > 0.0)) {
        throw BadParameter("verify: tolerance must be positive");
    }
    const ExperimentReport r = run_experiment(build(s));
    const OracleValues sim{r.distinguishability, r.extended_distinguishability, r.extended_visibility,
                           r.generalized_visibility};
    const OracleValues want = oracle(s);
    const double dev = std::max({
        std::abs(sim.distinguishability - want.distinguishability),
        std::abs(sim.extended_distinguishability - want.extended_distinguishability),
        std::abs(sim.extended_visibility - want.extended_visibility),
        std::abs(sim.generalized_visibility - want.generalized_visibility),
    });
    return ScenarioCheck{sim, want, dev, dev <= tol};
}

std::vector<GridRow> sweep_grid(GridScenario scenario, std::size_t steps, Execution exec) {
    if (steps < 2) {
        throw BadParameter("sweep_grid: steps must be at least 2");
    }
    const double upper = scenario == GridScenario::example1 ? 1.0 : std::numbers::pi;
    auto coord = [&](std::size_t k) {
        // Pin the last node exactly to the upper bound.
        return k + 1 == steps ? upper : upper * static_cast<double>(k) / static_cast<double>(steps - 1);
    };

    std::vector<GridRow> rows(steps * steps);
    for_each_index(exec, rows.size(), [&](std::size_t idx) {
        const double p1 = coord(idx / steps);
        const double p2 = coord(idx % steps);
        const Scenario s = scenario == GridScenario::example1 ? Scenario{Example1::from_moduli(p1, p2)}
                                                              : Scenario{Example3{p1, p2}};
        const ExperimentReport r = run_experiment(build(s));
        const double de = r.extended_distinguishability;
        const double ve = r.extended_visibility;
        rows[idx] = GridRow{p1, p2, de, ve, de * de + ve * ve};
    });
    return rows;
}

}  // namespace whichway
