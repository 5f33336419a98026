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

#include <iostream>

#include <CLI11.hpp>

#include "whichway/cli.hpp"

int main(int argc, char **argv) {
    using namespace whichway::cli;

    CLI::App app{"Which-way trade-off calculator"};
    app.require_subcommand(1);

    std::string config_path;
    auto *run = app.add_subcommand("run", "Evaluate an experiment described by a JSON config");
    run->add_option("config", config_path, "Path to the JSON config")->required();

    std::string scenario;
    std::size_t steps = 0;
    std::string grid_out = "-";
    auto *grid = app.add_subcommand("grid", "Write a D_E/V_E grid for example1 or example3 as CSV");
    grid->add_option("scenario", scenario, "example1 or example3")->required();
    grid->add_option("--steps", steps, "Nodes per axis (>= 2)")->required();
    grid->add_option("--out", grid_out, "Output path, '-' for stdout");

    double tol = 1e-10;
    std::uint64_t seed = 0;
    auto *verify = app.add_subcommand("verify", "Run the built-in consistency suite");
    verify->add_option("--tol", tol, "Tolerance for closed-form checks");
    verify->add_option("--seed", seed, "Seed for the randomised checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) {
            return cmd_run(config_path, std::cout, std::cerr);
        }
        if (*grid) {
            return cmd_grid(scenario, steps, grid_out, std::cout, std::cerr);
        }
        return cmd_verify(tol, seed, std::cout, std::cerr);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
