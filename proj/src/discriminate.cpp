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

#include "whichway/discriminate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace whichway {

namespace {

struct StartResult {
    double value = -1.0;
    std::vector<double> params;
    int iterations = 0;
    bool converged = false;
};

std::uint64_t start_seed(std::uint64_t seed, std::uint64_t start) {
    std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + (start + 1) * 0xD1B54A32D192ED03ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

StartResult pattern_search(const SubsystemDims &dims, const std::function<double(const Ket &)> &objective,
                           std::vector<double> x, const OptimizerOptions &options) {
    auto eval = [&](const std::vector<double> &p) { return objective(ket_from_parameters(dims, p)); };
    StartResult r;
    double fx = eval(x);
    double step = options.initial_step;
    if (x.empty()) {
        return StartResult{fx, std::move(x), 0, true};
    }
    int it = 0;
    for (; it < options.budget; ++it) {
        bool improved = false;
        for (std::size_t c = 0; c < x.size(); ++c) {
            for (double dir : {1.0, -1.0}) {
                const double saved = x[c];
                x[c] = saved + dir * step;
                const double f = eval(x);
                if (f > fx) {
                    fx = f;
                    improved = true;
                    break;
                }
                x[c] = saved;
            }
        }
        if (!improved) {
            step *= 0.5;
            if (step < options.min_step) {
                r.converged = true;
                ++it;
                break;
            }
        }
    }
    r.value = fx;
    r.params = std::move(x);
    r.iterations = it;
    return r;
}

DensityMatrix pure_density(const Ket &psi) { return density_from_ket(psi); }

void require_same_input(const StinespringChannel &ch0, const StinespringChannel &ch1) {
    if (ch0.sys_dim() != ch1.sys_dim()) {
        throw DimMismatch("discrimination: channels have input dims " + std::to_string(ch0.sys_dim()) + " and " +
                          std::to_string(ch1.sys_dim()));
    }
}

}  // namespace

Ket ket_from_parameters(const SubsystemDims &dims, std::span<const double> params) {
    const std::size_t n = dims.total();
    if (params.size() != 2 * n - 2) {
        throw DimMismatch("ket_from_parameters: expected " + std::to_string(2 * n - 2) + " parameters, got " +
                          std::to_string(params.size()));
    }
    std::vector<double> moduli(n);
    double sin_prod = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        moduli[k] = sin_prod * std::cos(params[k]);
        sin_prod *= std::sin(params[k]);
    }
    moduli[n - 1] = sin_prod;

    std::vector<cplx> amps(n);
    amps[0] = std::abs(moduli[0]);
    for (std::size_t k = 1; k < n; ++k) {
        amps[k] = std::polar(moduli[k], params[n - 1 + k - 1]);
    }
    return Ket(std::move(amps), dims);
}

PureStateOptimum maximize_over_pure_states(const SubsystemDims &dims,
                                           const std::function<double(const Ket &)> &objective,
                                           const OptimizerOptions &options) {
    if (options.starts < 1 || options.budget < 1) {
        throw BadParameter("maximize_over_pure_states: starts and budget must be positive");
    }
    const std::size_t n = dims.total();
    const std::size_t n_params = 2 * n - 2;
    std::vector<StartResult> results(static_cast<std::size_t>(options.starts));

    for_each_index(options.exec, results.size(), [&](std::size_t k) {
        std::mt19937_64 rng(start_seed(options.seed, k));
        std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);
        std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
        std::vector<double> x(n_params);
        for (std::size_t i = 0; i < n_params; ++i) {
            x[i] = i + 1 < n ? angle(rng) : phase(rng);
        }
        results[k] = pattern_search(dims, objective, std::move(x), options);
    });

    PureStateOptimum best;
    best.value = -1.0;
    for (const auto &r : results) {
        best.iterations += r.iterations;
        if (r.value > best.value) {
            best.value = r.value;
            best.params = r.params;
            best.converged = r.converged;
        }
    }
    return best;
}

double fixed_input_distance(const StinespringChannel &ch0, const StinespringChannel &ch1, const DensityMatrix &rho) {
    require_same_input(ch0, ch1);
    return trace_distance(apply_channel(ch0, rho), apply_channel(ch1, rho));
}

DiscriminationResult unassisted_distance(const StinespringChannel &ch0, const StinespringChannel &ch1,
                                         const OptimizerOptions &options) {
    require_same_input(ch0, ch1);
    const SubsystemDims dims = SubsystemDims::single(ch0.sys_dim());
    const auto opt = maximize_over_pure_states(
        dims, [&](const Ket &psi) { return fixed_input_distance(ch0, ch1, pure_density(psi)); }, options);

    DiscriminationResult r;
    r.unassisted = opt.value;
    r.best_input = ket_from_parameters(dims, opt.params);
    r.iterations = opt.iterations;
    r.converged = opt.converged;
    return r;
}

DiscriminationResult assisted_distance(const StinespringChannel &ch0, const StinespringChannel &ch1,
                                       bool optimize_input, const OptimizerOptions &options) {
    require_same_input(ch0, ch1);
    const std::size_t d = ch0.sys_dim();
    const SubsystemDims dims({d, d});
    auto distance = [&](const DensityMatrix &input) {
        return trace_distance(apply_channel_extended(ch0, input), apply_channel_extended(ch1, input));
    };

    DiscriminationResult r;
    r.assisted_bell = distance(density_from_ket(max_entangled(d)));
    if (optimize_input) {
        const auto opt =
            maximize_over_pure_states(dims, [&](const Ket &psi) { return distance(pure_density(psi)); }, options);
        r.assisted_optimized = opt.value;
        r.best_assisted_input = ket_from_parameters(dims, opt.params);
        r.iterations = opt.iterations;
        r.converged = opt.converged;
    }
    return r;
}

DiscriminationResult discriminate(const StinespringChannel &ch0, const StinespringChannel &ch1, bool optimize_input,
                                  const OptimizerOptions &options) {
    DiscriminationResult r = unassisted_distance(ch0, ch1, options);
    const DiscriminationResult a = assisted_distance(ch0, ch1, optimize_input, options);
    r.assisted_bell = a.assisted_bell;
    r.assisted_optimized = a.assisted_optimized;
    r.best_assisted_input = a.best_assisted_input;
    r.iterations += a.iterations;
    r.converged = r.converged && (!optimize_input || a.converged);
    return r;
}

std::pair<StinespringChannel, StinespringChannel> path_channels(const ExperimentConfig &config) {
    config.validate();
    const DensityMatrix rho_qs = config.rho_qs();
    return {
        StinespringChannel::from_env_first(config.u0_sd, path_spin_state(rho_qs, 0)),
        StinespringChannel::from_env_first(config.u1_sd, path_spin_state(rho_qs, 1)),
    };
}

}  // namespace whichway
