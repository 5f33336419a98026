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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "whichway/experiment.hpp"
#include "whichway/scenarios.hpp"

namespace whichway::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInequality = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Parse or validation failure; `key()` is the dotted path of the
/// offending config key.
class ConfigError : public Error {
   public:
    ConfigError(std::string key, const std::string &message);
    const std::string &key() const { return key_; }

   private:
    std::string key_;
};

enum class OutputFormat { csv, structured };

struct OutputSpec {
    OutputFormat format = OutputFormat::structured;
    std::optional<std::string> path;  // stdout when empty
};

struct SweepAxis {
    std::string name;  // e.g. "phi_rad", "theta0_rad", "abs_a00"
    double from;
    double to;
    std::size_t steps;

    double value(std::size_t k) const;
};

struct RunConfig {
    std::variant<Scenario, ExperimentConfig> experiment;
    OutputSpec output;
    std::vector<SweepAxis> sweep;
};

/// Parses a JSON config document. Throws ConfigError naming the key.
RunConfig parse_config(std::string_view text);

/// Scenario with the sweep axis values substituted. Throws ConfigError if
/// the axis does not belong to the scenario.
Scenario with_parameter(const Scenario &base, const std::string &name, double value);

/// Decimal text with 12 significant digits, '.' separator, no locale.
std::string format_number(double x);

/// "p1,p2,DE,VE,sum_sq" followed by one line per row.
std::string grid_csv(const std::vector<GridRow> &rows);

struct VerifyCheck {
    std::string name;
    double max_deviation;
    double threshold;
    bool passed;
};

/// Scenario closed forms, V_E = V_G, special-channel V_G values and the
/// random trade-off / Fuchs suites. Deterministic for a fixed seed.
std::vector<VerifyCheck> run_verify_suite(double tolerance, std::uint64_t seed);

int cmd_run(const std::string &config_path, std::ostream &out, std::ostream &err);
int cmd_grid(std::string_view scenario, std::size_t steps, const std::optional<std::string> &out_path,
             std::ostream &out, std::ostream &err);
int cmd_verify(double tolerance, std::uint64_t seed, std::ostream &out, std::ostream &err);

}  // namespace whichway::cli
