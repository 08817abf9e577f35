// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition
//
// CLI entry point. Exit codes: 0 success, 2 config error, 3 numerical
// failure, 4 size-guard refusal.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "aepd/runner.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Active element pattern estimation via directional decomposition"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool dump_z = false;
    double grid_step = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "scenario config file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_flag("--dump-z", dump_z, "dump Z-matrix / current / transfer CSVs");
        sub->add_option("--grid-step-deg", grid_step, "theta grid step in degrees");
    };

    CLI::App* oracle = app.add_subcommand("oracle", "full-wave 2-D reference AEPs");
    CLI::App* estimate = app.add_subcommand("estimate", "decomposed-path AEP estimation");
    CLI::App* compare = app.add_subcommand("compare", "estimated vs oracle AEP comparison");
    CLI::App* synthesize = app.add_subcommand("synthesize", "beam synthesis and main-lobe MSE");
    CLI::App* bench = app.add_subcommand("bench", "decomposed vs oracle scaling benchmark");
    for (CLI::App* sub : {oracle, estimate, compare, synthesize, bench})
        add_common(sub);

    CLI11_PARSE(app, argc, argv);

    aepd::Scenario scenario;
    try {
        scenario = aepd::parse_scenario_file(config_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    aepd::RunOptions opt;
    opt.out_dir = out_dir;
    opt.dump_z = dump_z;
    opt.grid_step_deg = grid_step;

    try {
        if (oracle->parsed())
            aepd::run_oracle(scenario, opt);
        else if (estimate->parsed())
            aepd::run_estimate(scenario, opt);
        else if (compare->parsed())
            aepd::run_compare(scenario, opt);
        else if (synthesize->parsed())
            aepd::run_synthesize(scenario, opt);
        else if (bench->parsed())
            aepd::run_bench(scenario, opt);
    } catch (const aepd::SizeGuardError& e) {
        std::fprintf(stderr, "size-guard refusal: %s\n", e.what());
        return 4;
    } catch (const aepd::NumericalFailureError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const aepd::InvalidParameterError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
