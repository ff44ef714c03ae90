#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nosreg/acceptance.hpp"
#include "nosreg/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Nonovershooting tracking controller design for feedback-linearizable plants"};
    app.require_subcommand(1);

    std::string config, out, gains, csv, plot;
    std::optional<std::uint64_t> seed;
    nosreg::AcceptanceOptions acceptance;

    auto* design = app.add_subcommand("design", "Compute gains for explicit pole sets");
    design->add_option("--config", config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
    design->add_option("--out", out, "Gains file to write")->required();

    auto* search = app.add_subcommand("search", "Search pole intervals for a certified design");
    search->add_option("--config", config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
    search->add_option("--seed", seed, "Override the config seed");
    search->add_option("--out", out, "Gains file to write")->required();

    auto* simulate = app.add_subcommand("simulate", "Simulate the closed loop and check for overshoot");
    simulate->add_option("--config", config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
    simulate->add_option("--gains", gains, "Gains file from design or search")->required()->check(CLI::ExistingFile);
    simulate->add_option("--csv", csv, "Trajectory CSV to write")->required();
    simulate->add_option("--plot", plot, "gnuplot script to write")->required();

    auto* reproduce = app.add_subcommand("reproduce-example", "Run the acceptance suite on the reference problem");
    reproduce->add_option("--step", acceptance.sim_step, "Integration step of the closed-loop runs")
        ->check(CLI::PositiveNumber);
    reproduce->add_option("--work-dir", acceptance.work_dir, "Scratch directory (default: fresh temp dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : nosreg::kExitValidation;
    }

    if (*design) return nosreg::cmd_design(config, out, std::cout, std::cerr);
    if (*search) return nosreg::cmd_search(config, seed, out, std::cout, std::cerr);
    if (*simulate) return nosreg::cmd_simulate(config, gains, csv, plot, std::cout, std::cerr);
    return nosreg::cmd_reproduce_example(acceptance, std::cout, std::cerr);
}
