// qax: command-line front end for the axiom verification suite and the
// localized-detector Bell experiments.

#include "qax/cli/commands.hpp"
#include "qax/cli/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    using namespace qax::cli;

    CLI::App app{"Executable checks of the quantum-mechanical axioms and localized CHSH experiments"};
    app.require_subcommand(1);

    std::string config_path;
    bool as_json = false;
    auto* verify = app.add_subcommand("verify", "Run every axiom's invariant suite on the example system");
    verify->add_option("--config", config_path, "Flat JSON config file");
    verify->add_flag("--json", as_json, "Emit the full JSON report");

    std::string out_path;
    std::string format;
    auto* scan = app.add_subcommand("chsh-scan", "CHSH value versus localization factor over nested windows");
    scan->add_option("--config", config_path, "Flat JSON config file")->required();
    scan->add_option("--out", out_path, "Write the table to this file instead of stdout");
    scan->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    long steps = 0;
    double dt = 0;
    auto* evolve = app.add_subcommand("evolve", "Time series of a spin-1/2 packet under the Pauli Hamiltonian");
    evolve->add_option("--config", config_path, "Flat JSON config file")->required();
    evolve->add_option("--steps", steps, "Number of time steps")->required();
    evolve->add_option("--dt", dt, "Step length (internal units, hbar = 1)")->required();

    auto* realist = app.add_subcommand("realist-check", "Compare localized correlations with the bounded random-field model");
    realist->add_option("--config", config_path, "Flat JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (!format.empty()) cfg.format = format;

        if (*verify) return cmd_verify(cfg, as_json, std::cout);
        if (*scan) {
            if (out_path.empty()) return cmd_chsh_scan(cfg, std::cout);
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw ConfigError("cannot open output file '" + out_path + "'");
            return cmd_chsh_scan(cfg, file);
        }
        if (*evolve) return cmd_evolve(cfg, steps, dt, std::cout, std::cerr);
        if (*realist) return cmd_realist_check(cfg, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_check_failed;
    }
    return exit_usage;
}
