// Copyright 2026 The hybridqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hybridqc/harness/runner.hpp"
#include "hybridqc/harness/scenarios.hpp"
#include "hybridqc/harness/verify.hpp"

namespace {

using namespace hqc::harness;

struct Common {
    std::string config;
    std::string scenario;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> particles;
};

void add_common(CLI::App* cmd, Common& c) {
    auto* config = cmd->add_option("--config", c.config, "Scenario file (TOML)");
    auto* scenario = cmd->add_option("--scenario", c.scenario, "Bundled scenario name");
    config->excludes(scenario);
    cmd->add_option("--out", c.out, "Output directory (overrides the config)");
    cmd->add_option("--seed", c.seed, "Random seed (overrides the config)");
    cmd->add_option("--particles", c.particles, "Particle count (overrides the config)")
        ->check(CLI::PositiveNumber);
}

ScenarioConfig resolve(const Common& c) {
    ScenarioConfig cfg;
    if (!c.config.empty()) {
        cfg = load_config(c.config);
    } else if (!c.scenario.empty()) {
        cfg = bundled_scenario(c.scenario);
    } else {
        throw hqc::ConfigInvalid("--config", "a scenario file or --scenario name is required");
    }
    if (c.seed) cfg.seed = *c.seed;
    if (c.particles) cfg.particles = *c.particles;
    if (!c.out.empty()) cfg.output_directory = c.out;
    validate(cfg);
    return cfg;
}

void summarize(const ResultRecord& r) {
    for (const auto& o : r.observations) {
        std::cout << "t=" << o.time;
        if (o.trace_distance) std::cout << " trace_distance=" << *o.trace_distance;
        std::cout << " band=" << o.error_band << " energy_drift=" << o.energy_drift
                  << " norm_drift=" << o.norm_drift << '\n';
    }
    std::cout << "wrote " << r.scenario.output_directory << " (" << r.wall_seconds << " s)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid quantum-classical ensemble simulator"};
    app.require_subcommand(1);

    Common sim_opts, cmp_opts, dump_opts;
    auto* simulate = app.add_subcommand("simulate", "Transport density A and estimate statistical operators");
    add_common(simulate, sim_opts);
    auto* compare = app.add_subcommand("compare", "Evolve densities A and B and track their trace distance");
    add_common(compare, cmp_opts);

    auto* dump = app.add_subcommand("dump-cloud", "Write the particle table of density A at a given time");
    add_common(dump, dump_opts);
    double dump_time = 0.0;
    dump->add_option("--time", dump_time, "Transport time before dumping")->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand("verify", "Run invariant suites and print a JSON report");
    std::vector<std::string> suites;
    verify->add_option("--suite", suites, "Suite name (repeatable); default: all")
        ->check(CLI::IsMember(verify_suite_names()));

    auto* list = app.add_subcommand("scenarios", "List or print bundled scenarios");
    std::string show;
    list->add_option("--show", show, "Print the named scenario as TOML");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            const ScenarioConfig cfg = resolve(sim_opts);
            const ResultRecord r = run_simulate(cfg);
            write_results(r, cfg.output_directory);
            summarize(r);
        } else if (compare->parsed()) {
            const ScenarioConfig cfg = resolve(cmp_opts);
            const ResultRecord r = run_compare(cfg);
            write_results(r, cfg.output_directory);
            if (r.initial_distance) std::cout << "initial trace_distance=" << *r.initial_distance << '\n';
            summarize(r);
        } else if (dump->parsed()) {
            const ScenarioConfig cfg = resolve(dump_opts);
            const std::filesystem::path file = std::filesystem::path(cfg.output_directory) / "cloud.csv";
            run_dump_cloud(cfg, dump_time, file);
            std::cout << "wrote " << file.string() << '\n';
        } else if (verify->parsed()) {
            if (suites.empty()) suites = verify_suite_names();
            std::vector<VerifyReport> reports;
            bool ok = true;
            for (const auto& s : suites) {
                reports.push_back(run_verify(s));
                ok = ok && reports.back().passed();
            }
            std::cout << report_json(reports);
            return ok ? EXIT_SUCCESS : EXIT_FAILURE;
        } else if (list->parsed()) {
            if (!show.empty()) {
                std::cout << emit_config(bundled_scenario(show));
            } else {
                for (const auto& name : bundled_scenario_names()) std::cout << name << '\n';
            }
        }
    } catch (const hqc::ConfigInvalid& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return EXIT_SUCCESS;
}
