#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nosreg/regulation.hpp"

namespace nosreg {

inline constexpr const char* kGainsFormat = "nosreg-gains/1";

// Provenance of gains produced by the pole search.
struct SearchRecord {
    std::uint64_t seed = 0;
    std::size_t max_trials = 0;
    std::vector<std::size_t> trials_used;  // per subsystem
};

struct GainsFile {
    std::vector<std::size_t> degrees;
    RegulatorGains gains;
    std::optional<SearchRecord> search;
};

// Reals are written in shortest round-trip form, so reading a file back
// reproduces every double exactly.
nlohmann::json gains_to_json(const GainsFile& file);
GainsFile gains_from_json(const nlohmann::json& doc);

void save_gains(const std::filesystem::path& path, const GainsFile& file);
GainsFile load_gains(const std::filesystem::path& path);

}  // namespace nosreg
