#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nosreg {

struct AcceptanceOptions {
    // Integration step of the closed-loop runs on the reference plant.
    double sim_step = 1e-3;
    // Scratch directory for generated configs, gains and CSVs. A fresh
    // directory under the system temp path is used (and removed) when empty.
    std::filesystem::path work_dir;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs every acceptance criterion against the built-in reference problem.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

// One line per criterion: `[PASS] 3 modal coefficients (0.002 s): ...`.
void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace nosreg
