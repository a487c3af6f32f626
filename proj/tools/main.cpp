// Command-line front end: solve, simulate, sweep, policy-grid, and trace
// subcommands over the flat key = value config format.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ehmdp/config.hpp"
#include "ehmdp/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;

int write_table(const ehmdp::Table& table, const std::string& output) {
    if (output.empty() || output == "-") {
        table.write_csv(std::cout);
        return kExitOk;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << output << "'\n";
        return kExitUsage;
    }
    table.write_csv(out);
    return kExitOk;
}

int run(const std::string& command, const std::string& config_path, const std::string& output) {
    try {
        const ehmdp::ExperimentConfig cfg = ehmdp::parse_config_file(config_path);
        ehmdp::Table table;
        if (command == "solve") {
            table = ehmdp::solve_table(cfg);
        } else if (command == "simulate") {
            table = ehmdp::simulate_table(cfg);
        } else if (command == "sweep") {
            table = ehmdp::sweep(cfg);
        } else if (command == "policy-grid") {
            table = ehmdp::policy_grid_table(
                ehmdp::policy_grid(cfg.params, cfg.grid_z, cfg.stop_tolerance()));
        } else { // trace
            if (!cfg.trace_log) {
                std::cerr << "error: trace requires trace.* keys in the config file\n";
                return kExitUsage;
            }
            table = ehmdp::trace_table(*cfg.trace_log);
        }
        return write_table(table, output);
    } catch (const ehmdp::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal status-update policies for an energy-harvesting monitor"};
    app.require_subcommand(1);

    struct SubArgs {
        std::string config;
        std::string output = "-";
    };
    SubArgs args[5];
    const char* names[5] = {"solve", "simulate", "sweep", "policy-grid", "trace"};
    const char* descriptions[5] = {
        "compute the optimal policy and report the start-state cost",
        "Monte Carlo estimate of the optimal policy's start-state cost",
        "solve every point of the configured parameter grid",
        "tabulate optimal actions over the (energy, age) plane",
        "replay per-state ages from an explicit event log",
    };
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("-c,--config", args[i].config, "configuration file")->required();
        sub->add_option("-o,--output", args[i].output, "output file ('-' for stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    for (int i = 0; i < 5; ++i)
        if (app.get_subcommand(names[i])->parsed()) return run(names[i], args[i].config, args[i].output);
    return kExitUsage;
}
