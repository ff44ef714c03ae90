#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nosreg/chainmodel.hpp"
#include "nosreg/polesearch.hpp"
#include "nosreg/sim.hpp"

namespace nosreg {

// Problem description shared by the design, search and simulate commands.
//
// {
//   "degrees": [4],
//   "exosystem": {"S": [[0, 1], [-1, 0]], "H": [[1, 0]], "w0": [1, 0]},
//   "initial_condition": {"xi0": [0, 2, -5, 4]}
//                      | {"plant": "reference4", "x0": [0, 2, -5, -4]},
//   "poles": [[-4.847, -4.017, -2.432, -0.1032]],             // design
//   "search": {"intervals": [[[-6, -4.5], ...]], "max_trials": 10000,
//              "seed": 1, "sep_min": 1e-6},                     // search
//   "sim": {"step": 1e-3, "horizon": 40, "record_stride": 10, "zero_band": 1e-9}
// }
struct ProblemConfig {
    std::vector<std::size_t> degrees;
    Exosystem exo;
    std::optional<Vec> xi0;
    std::optional<std::string> plant_name;
    std::optional<Vec> x0;
    std::vector<std::vector<double>> poles;       // empty when not given
    std::vector<std::vector<Interval>> intervals;  // empty when not given
    std::size_t max_trials = SearchSpec::kDefaultMaxTrials;
    std::uint64_t seed = 0;
    double sep_min = PoleSet::kDefaultSeparation;
    SimConfig sim;

    MimoChain mimo() const;
    // Builds the named plant; nullopt for pure normal-form problems.
    std::optional<NonlinearPlant> plant() const;
    // Chain coordinates of the initial condition (xi0, or T(x0) for a plant).
    Vec normal_ic() const;
    std::vector<PoleSet> pole_sets() const;
};

// Throws ConfigError naming the offending field.
ProblemConfig parse_config(const nlohmann::json& doc);
ProblemConfig load_config(const std::filesystem::path& path);

std::optional<NonlinearPlant> find_plant(const std::string& name);

// Built-in configurations of the reference tracking problem.
nlohmann::json reference_design_config(const std::vector<double>& poles);
nlohmann::json reference_search_config(const std::vector<Interval>& bands, std::uint64_t seed);

}  // namespace nosreg
