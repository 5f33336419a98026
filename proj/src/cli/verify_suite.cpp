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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "whichway/cli.hpp"
#include "whichway/discriminate.hpp"

namespace whichway::cli {

namespace {

// Slack for inequalities and identities that only hold up to round-off.
constexpr double kInequalitySlack = 1e-9;

struct Tracker {
    std::string name;
    double threshold;
    double worst = 0.0;

    void observe(double deviation) { worst = std::max(worst, std::isnan(deviation) ? INFINITY : deviation); }
    VerifyCheck done() const { return {name, worst, threshold, worst <= threshold}; }
};

std::vector<Scenario> example1_grid(std::size_t steps, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    std::vector<Scenario> out;
    for (std::size_t i = 0; i < steps; ++i) {
        for (std::size_t j = 0; j < steps; ++j) {
            const double m00 = static_cast<double>(i) / static_cast<double>(steps - 1);
            const double m11 = static_cast<double>(j) / static_cast<double>(steps - 1);
            const double m01 = std::sqrt(std::max(0.0, 1.0 - m00 * m00));
            const double m10 = std::sqrt(std::max(0.0, 1.0 - m11 * m11));
            out.push_back(Example1{std::polar(m00, phase(rng)), std::polar(m01, phase(rng)),
                                   std::polar(m10, phase(rng)), std::polar(m11, phase(rng))});
        }
    }
    return out;
}

void compare_with_oracle(std::span<const Scenario> scenarios, std::span<const ExperimentReport> reports,
                         Tracker &closed_form, Tracker &ve_vg, Tracker &detector_only) {
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const OracleValues want = oracle(scenarios[i]);
        const ExperimentReport &r = reports[i];
        closed_form.observe(std::abs(r.extended_distinguishability - want.extended_distinguishability));
        closed_form.observe(std::abs(r.extended_visibility - want.extended_visibility));
        closed_form.observe(std::abs(r.generalized_visibility - want.generalized_visibility));
        ve_vg.observe(std::abs(r.extended_visibility - r.generalized_visibility));
        detector_only.observe(std::abs(r.distinguishability));
    }
}

std::vector<ExperimentReport> run_all(std::span<const Scenario> scenarios) {
    std::vector<ExperimentConfig> configs;
    configs.reserve(scenarios.size());
    for (const auto &s : scenarios) {
        configs.push_back(build(s));
    }
    return run_batch(configs);
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(double tolerance, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<VerifyCheck> checks;
    Tracker ve_vg{"ve_equals_vg_on_scenarios", kInequalitySlack};
    Tracker detector_only{"detector_only_D_is_zero", tolerance};

    // Closed forms.
    const auto ex1 = example1_grid(51, rng);
    {
        Tracker t{"example1_closed_form", tolerance};
        compare_with_oracle(ex1, run_all(ex1), t, ve_vg, detector_only);
        checks.push_back(t.done());
    }
    std::vector<Scenario> ex2;
    for (int k = 0; k <= 100; ++k) {
        ex2.push_back(Example2{2 * std::numbers::pi * k / 100.0});
    }
    {
        Tracker t{"example2_closed_form", tolerance};
        compare_with_oracle(ex2, run_all(ex2), t, ve_vg, detector_only);
        checks.push_back(t.done());
    }
    std::vector<Scenario> ex3;
    std::vector<Scenario> bridge;
    for (int i = 0; i < 25; ++i) {
        for (int j = 0; j < 25; ++j) {
            const double t0 = std::numbers::pi * i / 24.0;
            const double t1 = std::numbers::pi * j / 24.0;
            ex3.push_back(Example3{t0, t1});
            bridge.push_back(Example1::from_moduli(std::abs(std::cos(t0 / 2)), std::abs(std::cos(t1 / 2))));
        }
    }
    const auto ex3_reports = run_all(ex3);
    {
        Tracker t{"example3_closed_form", tolerance};
        compare_with_oracle(ex3, ex3_reports, t, ve_vg, detector_only);
        checks.push_back(t.done());
    }
    {
        Tracker t{"example1_example3_bridge", tolerance};
        const auto bridge_reports = run_all(bridge);
        for (std::size_t i = 0; i < bridge.size(); ++i) {
            t.observe(std::abs(ex3_reports[i].extended_distinguishability -
                               bridge_reports[i].extended_distinguishability));
            t.observe(std::abs(ex3_reports[i].extended_visibility - bridge_reports[i].extended_visibility));
        }
        checks.push_back(t.done());
    }
    checks.push_back(ve_vg.done());
    checks.push_back(detector_only.done());

    // Special-case channels.
    {
        Tracker id{"special_identity_vg_is_one", tolerance};
        Tracker constant{"special_constant_vg_is_fidelity", kInequalitySlack};
        Tracker transpose{"special_transpose_vg_is_one", tolerance};
        const SuperOp id_map = special_channel(SpecialChannelKind::identity, 2);
        const SuperOp t_map = special_channel(SpecialChannelKind::transpose, 2);
        for (int k = 0; k < 100; ++k) {
            const DensityMatrix r0 = random_density(2, rng());
            const DensityMatrix r1 = random_density(2, rng());
            const SuperOp c_map =
                special_channel(SpecialChannelKind::constant, 2, random_density(2, rng()).matrix());
            auto vg = [&](const SuperOp &lambda, const DensityMatrix &a, const DensityMatrix &b) {
                return generalized_visibility(BlockChannel(lambda, lambda, lambda, lambda), a, b);
            };
            id.observe(std::abs(vg(id_map, r0, r1) - 1.0));
            constant.observe(std::abs(vg(c_map, r0, r1) - fidelity(r0, r1)));
        }
        const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
        transpose.observe(std::abs(
            generalized_visibility(BlockChannel(t_map, t_map, t_map, t_map), mixed, mixed) - 1.0));
        checks.push_back(id.done());
        checks.push_back(constant.done());
        checks.push_back(transpose.done());
    }

    // Random trade-off suite.
    {
        Tracker t{"random_tradeoff_inequalities", kInequalitySlack};
        std::vector<ExperimentConfig> configs;
        const std::uint64_t base = rng();
        for (std::uint64_t k = 0; k < 500; ++k) {
            configs.push_back(random_experiment(base + k));
        }
        for (const auto &r : run_batch(configs)) {
            t.observe(-r.margins.dv_generalized);
            t.observe(-r.margins.dv_extended);
            t.observe(-r.margins.fuchs);
            t.observe(r.distinguishability - r.extended_distinguishability);
        }
        checks.push_back(t.done());
    }

    // Fuchs inequality on random pairs.
    {
        Tracker t{"random_fuchs_inequality", kInequalitySlack};
        for (int k = 0; k < 1000; ++k) {
            const std::size_t d = 2 + static_cast<std::size_t>(k % 3);
            const DensityMatrix a = random_density(d, rng());
            const DensityMatrix b = random_density(d, rng());
            const double f = fidelity(a, b);
            t.observe(trace_distance(a, b) - std::sqrt(std::max(0.0, 1.0 - f * f)));
            if (f < -kInequalitySlack) {
                t.observe(-f);
            }
        }
        checks.push_back(t.done());
    }

    // Assisted vs detector-only discrimination on the scenarios.
    {
        Tracker marginal{"scenario_detector_marginal_distance_zero", kInequalitySlack};
        Tracker assisted{"scenario_assisted_bell_equals_DE", kInequalitySlack};
        const std::vector<Scenario> samples{Example1::from_moduli(1.0, 0.0), Example1::from_moduli(0.8, 0.3),
                                            Example2{std::numbers::pi / 3}, Example2{std::numbers::pi},
                                            Example3{0.4, 2.5}};
        for (const auto &s : samples) {
            const ExperimentConfig config = build(s);
            const auto [ch0, ch1] = path_channels(config);
            const DensityMatrix det_marginal = partial_trace(config.detector_in, {0});
            marginal.observe(fixed_input_distance(ch0, ch1, det_marginal));
            const double d_e = run_experiment(config).extended_distinguishability;
            assisted.observe(std::abs(assisted_distance(ch0, ch1, false).assisted_bell - d_e));
        }
        checks.push_back(marginal.done());
        checks.push_back(assisted.done());
    }
    return checks;
}

}  // namespace whichway::cli
