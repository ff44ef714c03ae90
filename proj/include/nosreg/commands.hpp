#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "nosreg/errors.hpp"

namespace nosreg {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  // acceptance criteria failed
    kExitValidation = 2,
    kExitSynthesis = 3,
    kExitSearchExhausted = 4,
    kExitSimulation = 5,
};

int exit_code_for(const Error& e);

// Each command reports progress on `out`, errors on `err`, and returns an
// ExitCode. Library errors never escape.
int cmd_design(const std::filesystem::path& config, const std::filesystem::path& gains_out, std::ostream& out,
               std::ostream& err);

int cmd_search(const std::filesystem::path& config, std::optional<std::uint64_t> seed,
               const std::filesystem::path& gains_out, std::ostream& out, std::ostream& err);

int cmd_simulate(const std::filesystem::path& config, const std::filesystem::path& gains,
                 const std::filesystem::path& csv_out, const std::filesystem::path& plot_out, std::ostream& out,
                 std::ostream& err);

struct AcceptanceOptions;
int cmd_reproduce_example(const AcceptanceOptions& options, std::ostream& out, std::ostream& err);

}  // namespace nosreg
