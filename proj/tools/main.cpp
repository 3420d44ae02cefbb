#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pitchcatch/cli_runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pitchcatch: shaped-photon pitch-and-catch simulator for two "
                 "cascaded qubit-cavity nodes"};
    app.require_subcommand(1);

    pitchcatch::RunOptions opts;
    std::string sweep_arg;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a config");
    run->add_option("--config", opts.config_path, "config file (JSON)")
        ->required();
    run->add_option("--out", opts.out_dir, "output directory override");
    run->add_flag("--plot", opts.plot, "also write plot.svg");
    run->add_option("--dt", opts.dt_ns, "integrator step override (ns)");
    run->add_option("--preset", opts.preset, "parameter preset override");
    run->add_option("--sweep", sweep_arg,
                    "sweep an override key: KEY=v1,v2,...");

    std::string validate_path;
    CLI::App* validate =
        app.add_subcommand("validate", "schema-check a config, no side effects");
    validate->add_option("--config", validate_path, "config file (JSON)")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (!sweep_arg.empty()) {
            const auto eq = sweep_arg.find('=');
            if (eq == std::string::npos) {
                std::cerr << "config error: --sweep expects KEY=v1,v2,...\n";
                return 1;
            }
            opts.sweep_key = sweep_arg.substr(0, eq);
            std::stringstream vals(sweep_arg.substr(eq + 1));
            std::string tok;
            while (std::getline(vals, tok, ',')) {
                try {
                    opts.sweep_values.push_back(std::stod(tok));
                } catch (...) {
                    std::cerr << "config error: bad sweep value '" << tok << "'\n";
                    return 1;
                }
            }
            if (opts.sweep_values.empty()) {
                std::cerr << "config error: empty sweep value list\n";
                return 1;
            }
        }
        return pitchcatch::run_experiment(opts);
    }
    return pitchcatch::validate_config(validate_path);
}
