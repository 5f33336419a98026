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

// JSON run configuration.
//
//   {
//     "scenario": {"name": "example2", "phi_rad": 3.14159},
//     "output":   {"format": "csv", "path": "out.csv"},
//     "sweep":    {"phi_rad": {"from": 0, "to": 6.283, "steps": 11}}
//   }
//
// or, instead of "scenario",
//
//   "custom": {
//     "spin_prep": {"a00": [1, 0], "a01": [0, 0], "a10": [0, 0], "a11": [1, 0]},
//     "u0": [[[1, 0], [0, 0], ...], ...],      // row-major, [re, im] entries
//     "u1": ...,
//     "detector_in": "bell" | matrix,
//     "d_S": 2, "d_D": 2, "ancilla": true
//   }
//
// "rho_qs" (a 2*d_S matrix) may replace "spin_prep" for non-qubit spins.

#include <cmath>
#include <set>

#include <json.hpp>

#include "whichway/cli.hpp"

namespace whichway::cli {

namespace {

using nlohmann::json;

std::string join(const std::string &parent, const std::string &key) {
    return parent.empty() ? key : parent + "." + key;
}

const json &require(const json &obj, const std::string &parent, const std::string &key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(join(parent, key), "missing required key");
    }
    return obj.at(key);
}

double as_number(const json &v, const std::string &key) {
    if (!v.is_number()) {
        throw ConfigError(key, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(key, "expected a finite number");
    }
    return x;
}

std::size_t as_count(const json &v, const std::string &key) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw ConfigError(key, "expected a positive integer");
    }
    return v.get<std::size_t>();
}

cplx as_complex(const json &v, const std::string &key) {
    if (v.is_number()) {
        return as_number(v, key);
    }
    if (!v.is_array() || v.size() != 2) {
        throw ConfigError(key, "expected a complex number as [re, im]");
    }
    return {as_number(v[0], key + "[0]"), as_number(v[1], key + "[1]")};
}

ComplexMatrix as_matrix(const json &v, const std::string &key, std::size_t expected_dim) {
    if (!v.is_array() || v.size() != expected_dim) {
        throw ConfigError(key, "expected a " + std::to_string(expected_dim) + "x" + std::to_string(expected_dim) +
                                   " matrix of [re, im] entries");
    }
    std::vector<cplx> entries;
    entries.reserve(expected_dim * expected_dim);
    for (std::size_t i = 0; i < expected_dim; ++i) {
        const std::string row_key = key + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != expected_dim) {
            throw ConfigError(row_key, "expected a row of " + std::to_string(expected_dim) + " entries");
        }
        for (std::size_t j = 0; j < expected_dim; ++j) {
            entries.push_back(as_complex(v[i][j], row_key + "[" + std::to_string(j) + "]"));
        }
    }
    return ComplexMatrix(expected_dim, std::move(entries));
}

template <typename F>
auto rethrow_as_config_error(const std::string &key, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(key, e.what());
    }
}

Example1 parse_amplitudes(const json &obj, const std::string &parent) {
    return Example1{
        as_complex(require(obj, parent, "a00"), join(parent, "a00")),
        as_complex(require(obj, parent, "a01"), join(parent, "a01")),
        as_complex(require(obj, parent, "a10"), join(parent, "a10")),
        as_complex(require(obj, parent, "a11"), join(parent, "a11")),
    };
}

Scenario parse_scenario(const json &obj) {
    const std::string parent = "scenario";
    if (!obj.is_object()) {
        throw ConfigError(parent, "expected an object");
    }
    const json &name_v = require(obj, parent, "name");
    if (!name_v.is_string()) {
        throw ConfigError("scenario.name", "expected a string");
    }
    const std::string name = name_v.get<std::string>();
    Scenario s;
    if (name == "example1") {
        s = parse_amplitudes(obj, parent);
    } else if (name == "example2") {
        s = Example2{as_number(require(obj, parent, "phi_rad"), "scenario.phi_rad")};
    } else if (name == "example3") {
        s = Example3{as_number(require(obj, parent, "theta0_rad"), "scenario.theta0_rad"),
                     as_number(require(obj, parent, "theta1_rad"), "scenario.theta1_rad")};
    } else {
        throw ConfigError("scenario.name", "unknown scenario '" + name + "' (expected example1, example2, example3)");
    }
    // Validates parameters (normalization etc.) up front.
    rethrow_as_config_error(parent, [&] { return build(s); });
    return s;
}

ExperimentConfig parse_custom(const json &obj) {
    const std::string parent = "custom";
    if (!obj.is_object()) {
        throw ConfigError(parent, "expected an object");
    }
    const std::size_t d_s = as_count(require(obj, parent, "d_S"), "custom.d_S");
    const std::size_t d_d = as_count(require(obj, parent, "d_D"), "custom.d_D");
    bool ancilla = true;
    if (obj.contains("ancilla")) {
        if (!obj.at("ancilla").is_boolean()) {
            throw ConfigError("custom.ancilla", "expected true or false");
        }
        ancilla = obj.at("ancilla").get<bool>();
    }

    std::variant<SpinPreparation, DensityMatrix> spin;
    const bool has_prep = obj.contains("spin_prep");
    const bool has_rho = obj.contains("rho_qs");
    if (has_prep == has_rho) {
        throw ConfigError("custom.spin_prep", "exactly one of spin_prep or rho_qs is required");
    }
    if (has_prep) {
        const Example1 a = parse_amplitudes(obj.at("spin_prep"), "custom.spin_prep");
        SpinPreparation prep{a.a00, a.a01, a.a10, a.a11};
        rethrow_as_config_error("custom.spin_prep", [&] {
            prep.validate();
            return 0;
        });
        spin = prep;
    } else {
        ComplexMatrix m = as_matrix(obj.at("rho_qs"), "custom.rho_qs", 2 * d_s);
        spin = rethrow_as_config_error("custom.rho_qs",
                                       [&] { return DensityMatrix(std::move(m), SubsystemDims({2, d_s})); });
    }

    auto unitary = [&](const std::string &key) {
        ComplexMatrix m = as_matrix(require(obj, parent, key), join(parent, key), d_s * d_d);
        return rethrow_as_config_error(join(parent, key), [&] { return Unitary(std::move(m)); });
    };
    Unitary u0 = unitary("u0");
    Unitary u1 = unitary("u1");

    const json &det = require(obj, parent, "detector_in");
    DensityMatrix detector_in = [&] {
        if (det.is_string()) {
            if (det.get<std::string>() != "bell") {
                throw ConfigError("custom.detector_in", "expected \"bell\" or a matrix");
            }
            if (!ancilla) {
                throw ConfigError("custom.detector_in", "\"bell\" needs an ancilla (set ancilla: true)");
            }
            return density_from_ket(max_entangled(d_d));
        }
        const std::size_t dim = ancilla ? d_d * d_d : d_d;
        ComplexMatrix m = as_matrix(det, "custom.detector_in", dim);
        const SubsystemDims dims = ancilla ? SubsystemDims({d_d, d_d}) : SubsystemDims({d_d});
        return rethrow_as_config_error("custom.detector_in", [&] { return DensityMatrix(std::move(m), dims); });
    }();

    ExperimentConfig config{std::move(spin), std::move(u0), std::move(u1), std::move(detector_in), ancilla, d_s, d_d};
    rethrow_as_config_error(parent, [&] {
        config.validate();
        return 0;
    });
    return config;
}

OutputSpec parse_output(const json &obj) {
    OutputSpec out;
    if (!obj.is_object()) {
        throw ConfigError("output", "expected an object");
    }
    if (obj.contains("format")) {
        const json &f = obj.at("format");
        if (f == "csv") {
            out.format = OutputFormat::csv;
        } else if (f == "structured" || f == "json") {
            out.format = OutputFormat::structured;
        } else {
            throw ConfigError("output.format", "expected \"csv\" or \"structured\"");
        }
    }
    if (obj.contains("path")) {
        if (!obj.at("path").is_string()) {
            throw ConfigError("output.path", "expected a string");
        }
        out.path = obj.at("path").get<std::string>();
    }
    return out;
}

std::vector<SweepAxis> parse_sweep(const json &obj) {
    if (!obj.is_object() || obj.empty()) {
        throw ConfigError("sweep", "expected an object of {name: {from, to, steps}}");
    }
    if (obj.size() > 2) {
        throw ConfigError("sweep", "at most two parameters can be swept");
    }
    std::vector<SweepAxis> axes;
    for (const auto &[name, range] : obj.items()) {
        const std::string parent = "sweep." + name;
        SweepAxis a{name, as_number(require(range, parent, "from"), parent + ".from"),
                    as_number(require(range, parent, "to"), parent + ".to"),
                    as_count(require(range, parent, "steps"), parent + ".steps")};
        if (a.steps < 2) {
            throw ConfigError(parent + ".steps", "steps must be at least 2");
        }
        axes.push_back(std::move(a));
    }
    return axes;
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string &message)
    : Error("config key '" + key + "': " + message), key_(std::move(key)) {}

double SweepAxis::value(std::size_t k) const {
    if (k + 1 == steps) {
        return to;
    }
    return from + (to - from) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

Scenario with_parameter(const Scenario &base, const std::string &name, double value) {
    const std::string key = "sweep." + name;
    if (auto *e = std::get_if<Example1>(&base)) {
        if (name != "abs_a00" && name != "abs_a11") {
            throw ConfigError(key, "example1 sweeps abs_a00 or abs_a11");
        }
        if (value < 0.0 || value > 1.0) {
            throw ConfigError(key, "moduli must lie in [0, 1]");
        }
        // Keep the configured phases, reset the moduli of the path's pair.
        auto phase = [](cplx z) { return z == cplx{} ? 0.0 : std::arg(z); };
        Example1 out = *e;
        const double partner = std::sqrt(std::max(0.0, 1.0 - value * value));
        if (name == "abs_a00") {
            out.a00 = std::polar(value, phase(e->a00));
            out.a01 = std::polar(partner, phase(e->a01));
        } else {
            out.a11 = std::polar(value, phase(e->a11));
            out.a10 = std::polar(partner, phase(e->a10));
        }
        return out;
    }
    if (std::holds_alternative<Example2>(base)) {
        if (name != "phi_rad") {
            throw ConfigError(key, "example2 sweeps phi_rad");
        }
        return Example2{value};
    }
    const auto &e = std::get<Example3>(base);
    if (name == "theta0_rad") {
        return Example3{value, e.theta1_rad};
    }
    if (name == "theta1_rad") {
        return Example3{e.theta0_rad, value};
    }
    throw ConfigError(key, "example3 sweeps theta0_rad or theta1_rad");
}

RunConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("<document>", "expected a JSON object");
    }
    static const std::set<std::string> known{"scenario", "custom", "output", "sweep"};
    for (const auto &[key, _] : doc.items()) {
        if (!known.contains(key)) {
            throw ConfigError(key, "unknown top-level key");
        }
    }
    const bool has_scenario = doc.contains("scenario");
    const bool has_custom = doc.contains("custom");
    if (has_scenario == has_custom) {
        throw ConfigError("scenario", "exactly one of 'scenario' or 'custom' is required");
    }

    RunConfig cfg{has_scenario ? std::variant<Scenario, ExperimentConfig>(parse_scenario(doc.at("scenario")))
                               : std::variant<Scenario, ExperimentConfig>(parse_custom(doc.at("custom"))),
                  {},
                  {}};
    if (doc.contains("output")) {
        cfg.output = parse_output(doc.at("output"));
    }
    if (doc.contains("sweep")) {
        if (has_custom) {
            throw ConfigError("sweep", "sweeps are only supported for built-in scenarios");
        }
        cfg.sweep = parse_sweep(doc.at("sweep"));
        // Reject unknown axis names before running anything.
        const auto &s = std::get<Scenario>(cfg.experiment);
        for (const auto &axis : cfg.sweep) {
            with_parameter(s, axis.name, axis.from);
            with_parameter(s, axis.name, axis.to);
        }
    }
    return cfg;
}

}  // namespace whichway::cli
