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

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "whichway/cli.hpp"

namespace whichway::cli {

namespace {

using nlohmann::json;

json matrix_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json scalars_json(const ExperimentReport &r) {
    return {
        {"D", r.distinguishability},
        {"D_E", r.extended_distinguishability},
        {"V_E", r.extended_visibility},
        {"V_G", r.generalized_visibility},
        {"margins",
         {{"one_minus_D2_minus_VE2", r.margins.dv_extended},
          {"one_minus_D2_minus_VG2", r.margins.dv_generalized},
          {"fuchs_sqrt_one_minus_VE2_minus_DE", r.margins.fuchs}}},
        {"within_bounds", r.within_bounds()},
    };
}

json report_json(const std::string &label, const ExperimentReport &r) {
    json j = scalars_json(r);
    j["experiment"] = label;
    j["rho_D"] = {matrix_json(r.rho_d.path0.matrix()), matrix_json(r.rho_d.path1.matrix())};
    if (r.rho_dda) {
        j["rho_DDprime"] = {matrix_json(r.rho_dda->path0.matrix()), matrix_json(r.rho_dda->path1.matrix())};
    }
    j["rho_fin_QS"] = matrix_json(r.rho_fin_qs.matrix());
    return j;
}

std::string report_csv_header() { return "D,DE,VE,VG,margin_dv_extended,margin_dv_generalized,margin_fuchs"; }

std::string report_csv_row(const ExperimentReport &r) {
    std::string s;
    for (double x : {r.distinguishability, r.extended_distinguishability, r.extended_visibility,
                     r.generalized_visibility, r.margins.dv_extended, r.margins.dv_generalized, r.margins.fuchs}) {
        if (!s.empty()) {
            s += ',';
        }
        s += format_number(x);
    }
    return s;
}

bool write_output(const std::optional<std::string> &path, const std::string &text, std::ostream &out,
                  std::ostream &err) {
    if (!path || *path == "-") {
        out << text;
        return static_cast<bool>(out);
    }
    std::ofstream f(*path, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot open output path '" << *path << "' for writing\n";
        return false;
    }
    f << text;
    f.close();
    if (!f) {
        err << "error: failed writing '" << *path << "'\n";
        return false;
    }
    return true;
}

struct SweepPoint {
    std::vector<double> params;
    Scenario scenario;
};

std::vector<SweepPoint> expand_sweep(const Scenario &base, const std::vector<SweepAxis> &axes) {
    std::vector<SweepPoint> points{{{}, base}};
    for (const auto &axis : axes) {
        std::vector<SweepPoint> next;
        for (const auto &p : points) {
            for (std::size_t k = 0; k < axis.steps; ++k) {
                const double v = axis.value(k);
                SweepPoint q{p.params, with_parameter(p.scenario, axis.name, v)};
                q.params.push_back(v);
                next.push_back(std::move(q));
            }
        }
        points = std::move(next);
    }
    return points;
}

}  // namespace

int cmd_run(const std::string &config_path, std::ostream &out, std::ostream &err) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        err << "error: cannot read config '" << config_path << "'\n";
        return kExitUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    RunConfig cfg;
    try {
        cfg = parse_config(buf.str());
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string text;
    bool ok = true;
    try {
        if (cfg.sweep.empty()) {
            const bool is_scenario = std::holds_alternative<Scenario>(cfg.experiment);
            const ExperimentConfig config =
                is_scenario ? build(std::get<Scenario>(cfg.experiment)) : std::get<ExperimentConfig>(cfg.experiment);
            const std::string label =
                is_scenario ? std::string(scenario_name(std::get<Scenario>(cfg.experiment))) : "custom";
            const ExperimentReport r = run_experiment(config);
            ok = r.within_bounds();
            if (cfg.output.format == OutputFormat::csv) {
                text = report_csv_header() + "\n" + report_csv_row(r) + "\n";
            } else {
                text = report_json(label, r).dump(2) + "\n";
            }
        } else {
            const auto &base = std::get<Scenario>(cfg.experiment);
            const auto points = expand_sweep(base, cfg.sweep);
            std::vector<ExperimentConfig> configs;
            configs.reserve(points.size());
            for (const auto &p : points) {
                configs.push_back(build(p.scenario));
            }
            const auto reports = run_batch(configs);
            if (cfg.output.format == OutputFormat::csv) {
                for (const auto &axis : cfg.sweep) {
                    text += axis.name + ",";
                }
                text += report_csv_header() + "\n";
                for (std::size_t i = 0; i < reports.size(); ++i) {
                    for (double v : points[i].params) {
                        text += format_number(v) + ",";
                    }
                    text += report_csv_row(reports[i]) + "\n";
                }
            } else {
                json rows = json::array();
                for (std::size_t i = 0; i < reports.size(); ++i) {
                    json row = scalars_json(reports[i]);
                    for (std::size_t a = 0; a < cfg.sweep.size(); ++a) {
                        row[cfg.sweep[a].name] = points[i].params[a];
                    }
                    rows.push_back(std::move(row));
                }
                text = json{{"experiment", std::string(scenario_name(base))}, {"rows", rows}}.dump(2) + "\n";
            }
            for (const auto &r : reports) {
                ok = ok && r.within_bounds();
            }
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (!write_output(cfg.output.path, text, out, err)) {
        return kExitUsage;
    }
    if (!ok) {
        err << "error: a trade-off inequality is violated beyond " << format_number(kReportTolerance) << "\n";
        return kExitInequality;
    }
    return kExitOk;
}

int cmd_grid(std::string_view scenario, std::size_t steps, const std::optional<std::string> &out_path,
             std::ostream &out, std::ostream &err) {
    GridScenario which;
    if (scenario == "example1") {
        which = GridScenario::example1;
    } else if (scenario == "example3") {
        which = GridScenario::example3;
    } else {
        err << "error: grid supports example1 or example3, got '" << scenario << "'\n";
        return kExitUsage;
    }
    if (steps < 2) {
        err << "error: --steps must be at least 2\n";
        return kExitUsage;
    }
    const std::string text = grid_csv(sweep_grid(which, steps));
    return write_output(out_path, text, out, err) ? kExitOk : kExitUsage;
}

int cmd_verify(double tolerance, std::uint64_t seed, std::ostream &out, std::ostream &err) {
    if (!(tolerance > 0.0)) {
        err << "error: --tol must be positive\n";
        return kExitUsage;
    }
    std::vector<VerifyCheck> checks;
    try {
        checks = run_verify_suite(tolerance, seed);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    std::vector<std::string> failed;
    for (const auto &c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " max_dev=" << format_number(c.max_deviation)
            << " threshold=" << format_number(c.threshold) << "\n";
        if (!c.passed) {
            failed.push_back(c.name);
        }
    }
    if (failed.empty()) {
        out << "all " << checks.size() << " checks passed\n";
        return kExitOk;
    }
    out << "failed checks:";
    for (const auto &f : failed) {
        out << " " << f;
    }
    out << "\n";
    return kExitVerifyFailed;
}

}  // namespace whichway::cli
