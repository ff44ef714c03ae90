#include "nosreg/config.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "nosreg/errors.hpp"
#include "nosreg/reference_problem.hpp"

namespace nosreg {

using nlohmann::json;

namespace {

const json& require_field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(path + key, "missing");
    }
    return obj.at(key);
}

double to_real(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path, "must be finite");
    return d;
}

Vec to_vec(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
    Vec out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_real(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Mat to_mat(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a nonempty array of rows");
    const std::size_t rows = v.size();
    std::size_t cols = 0;
    Vec entries;
    for (std::size_t r = 0; r < rows; ++r) {
        const Vec row = to_vec(v[r], path + "[" + std::to_string(r) + "]");
        if (r == 0) cols = row.size();
        if (row.size() != cols || cols == 0) throw ConfigError(path, "rows must be nonempty and equally long");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return Mat(rows, cols, std::move(entries));
}

std::size_t to_count(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw ConfigError(path, "expected a nonnegative integer");
    }
    return v.get<std::size_t>();
}

std::uint64_t to_seed(const json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ConfigError(path, "expected an unsigned 64-bit integer");
    }
    return v.get<std::uint64_t>();
}

ProblemConfig parse_checked(const json& doc) {
    if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
    ProblemConfig cfg;

    const json& degrees = require_field(doc, "degrees", "");
    if (!degrees.is_array() || degrees.empty()) throw ConfigError("degrees", "expected a nonempty array");
    for (std::size_t j = 0; j < degrees.size(); ++j) {
        const std::size_t d = to_count(degrees[j], "degrees[" + std::to_string(j) + "]");
        if (d == 0) throw ConfigError("degrees[" + std::to_string(j) + "]", "must be at least 1");
        cfg.degrees.push_back(d);
    }
    const std::size_t p = cfg.degrees.size();
    const std::size_t total = std::accumulate(cfg.degrees.begin(), cfg.degrees.end(), std::size_t{0});

    const json& exo = require_field(doc, "exosystem", "");
    Mat S = to_mat(require_field(exo, "S", "exosystem."), "exosystem.S");
    Mat H = to_mat(require_field(exo, "H", "exosystem."), "exosystem.H");
    Vec w0 = to_vec(require_field(exo, "w0", "exosystem."), "exosystem.w0");
    if (S.rows() != S.cols()) throw ConfigError("exosystem.S", "must be square");
    if (H.cols() != S.rows()) throw ConfigError("exosystem.H", "column count must equal the size of S");
    if (H.rows() != p) throw ConfigError("exosystem.H", "needs one row per output (" + std::to_string(p) + ")");
    if (w0.size() != S.rows()) throw ConfigError("exosystem.w0", "length must equal the size of S");
    cfg.exo = Exosystem(std::move(S), std::move(H), std::move(w0));

    const json& ic = require_field(doc, "initial_condition", "");
    if (ic.contains("xi0")) {
        cfg.xi0 = to_vec(ic.at("xi0"), "initial_condition.xi0");
        if (cfg.xi0->size() != total) {
            throw ConfigError("initial_condition.xi0", "length must equal the total degree " + std::to_string(total));
        }
    } else if (ic.contains("plant")) {
        if (!ic.at("plant").is_string()) throw ConfigError("initial_condition.plant", "expected a string");
        cfg.plant_name = ic.at("plant").get<std::string>();
        const std::optional<NonlinearPlant> plant = find_plant(*cfg.plant_name);
        if (!plant) throw ConfigError("initial_condition.plant", "unknown plant '" + *cfg.plant_name + "'");
        cfg.x0 = to_vec(require_field(ic, "x0", "initial_condition."), "initial_condition.x0");
        if (cfg.x0->size() != plant->state_dim) {
            throw ConfigError("initial_condition.x0", "length must equal the plant state dimension " +
                                                          std::to_string(plant->state_dim));
        }
        if (plant->degrees != cfg.degrees) {
            throw ConfigError("degrees", "do not match the relative degrees of plant '" + *cfg.plant_name + "'");
        }
    } else {
        throw ConfigError("initial_condition", "needs either xi0 or plant + x0");
    }

    if (doc.contains("poles")) {
        const json& poles = doc.at("poles");
        if (!poles.is_array() || poles.size() != p) throw ConfigError("poles", "needs one pole list per output");
        for (std::size_t j = 0; j < p; ++j) {
            const std::string path = "poles[" + std::to_string(j) + "]";
            Vec list = to_vec(poles[j], path);
            if (list.size() != cfg.degrees[j]) {
                throw ConfigError(path, "needs " + std::to_string(cfg.degrees[j]) + " poles");
            }
            try {
                PoleSet check(list, 0.0);
            } catch (const InvalidPoles& e) {
                throw ConfigError(path, e.what());
            }
            cfg.poles.push_back(std::move(list));
        }
    }

    if (doc.contains("search")) {
        const json& search = doc.at("search");
        if (search.contains("intervals")) {
            const json& ivs = search.at("intervals");
            if (!ivs.is_array() || ivs.size() != p) {
                throw ConfigError("search.intervals", "needs one interval list per output");
            }
            for (std::size_t j = 0; j < p; ++j) {
                const std::string path = "search.intervals[" + std::to_string(j) + "]";
                if (!ivs[j].is_array() || ivs[j].size() != cfg.degrees[j]) {
                    throw ConfigError(path, "needs " + std::to_string(cfg.degrees[j]) + " intervals");
                }
                std::vector<Interval> list;
                for (std::size_t i = 0; i < ivs[j].size(); ++i) {
                    const std::string ipath = path + "[" + std::to_string(i) + "]";
                    const Vec pair = to_vec(ivs[j][i], ipath);
                    if (pair.size() != 2) throw ConfigError(ipath, "expected [lo, hi]");
                    if (pair[0] > pair[1]) throw ConfigError(ipath, "lo exceeds hi");
                    if (pair[1] > 0.0) throw ConfigError(ipath, "must lie on the closed negative real axis");
                    list.push_back(Interval{pair[0], pair[1]});
                }
                cfg.intervals.push_back(std::move(list));
            }
        }
        if (search.contains("max_trials")) {
            cfg.max_trials = to_count(search.at("max_trials"), "search.max_trials");
            if (cfg.max_trials == 0) throw ConfigError("search.max_trials", "must be positive");
        }
        if (search.contains("seed")) cfg.seed = to_seed(search.at("seed"), "search.seed");
        if (search.contains("sep_min")) {
            cfg.sep_min = to_real(search.at("sep_min"), "search.sep_min");
            if (cfg.sep_min < 0.0) throw ConfigError("search.sep_min", "must be nonnegative");
        }
    }

    for (std::size_t j = 0; j < cfg.poles.size(); ++j) {
        try {
            PoleSet check(cfg.poles[j], cfg.sep_min);
        } catch (const InvalidPoles& e) {
            throw ConfigError("poles[" + std::to_string(j) + "]", e.what());
        }
    }

    if (doc.contains("sim")) {
        const json& sim = doc.at("sim");
        if (sim.contains("step")) cfg.sim.step = to_real(sim.at("step"), "sim.step");
        if (sim.contains("horizon")) cfg.sim.horizon = to_real(sim.at("horizon"), "sim.horizon");
        if (sim.contains("record_stride")) cfg.sim.record_stride = to_count(sim.at("record_stride"), "sim.record_stride");
        if (sim.contains("zero_band")) cfg.sim.zero_band = to_real(sim.at("zero_band"), "sim.zero_band");
        try {
            cfg.sim.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError("sim", e.what());
        }
    }
    return cfg;
}

}  // namespace

ProblemConfig parse_config(const json& doc) {
    try {
        return parse_checked(doc);
    } catch (const json::exception& e) {
        throw ConfigError("<document>", e.what());
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("<document>", e.what());
    }
}

ProblemConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), "cannot open");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        // The message carries the line and column of the syntax error.
        throw ConfigError(path.string(), e.what());
    }
    return parse_config(doc);
}

std::optional<NonlinearPlant> find_plant(const std::string& name) {
    if (name == "reference4") return reference::plant();
    return std::nullopt;
}

MimoChain ProblemConfig::mimo() const { return assemble_mimo(degrees); }

std::optional<NonlinearPlant> ProblemConfig::plant() const {
    if (!plant_name) return std::nullopt;
    return find_plant(*plant_name);
}

Vec ProblemConfig::normal_ic() const {
    if (xi0) return *xi0;
    return plant()->normal_map(*x0);
}

std::vector<PoleSet> ProblemConfig::pole_sets() const {
    std::vector<PoleSet> out;
    for (const auto& list : poles) out.emplace_back(list, sep_min);
    return out;
}

namespace {

json reference_common() {
    return json{{"degrees", {4}},
                {"exosystem", {{"S", {{0.0, 1.0}, {-1.0, 0.0}}}, {"H", {{1.0, 0.0}}}, {"w0", {1.0, 0.0}}}},
                {"initial_condition",
                 {{"plant", "reference4"}, {"x0", reference::state_from_normal(reference::kXi0)}}},
                {"sim", {{"step", 1e-3}, {"horizon", 40.0}, {"record_stride", 10}, {"zero_band", 1e-9}}}};
}

}  // namespace

json reference_design_config(const std::vector<double>& poles) {
    json doc = reference_common();
    doc["poles"] = json::array({poles});
    return doc;
}

json reference_search_config(const std::vector<Interval>& bands, std::uint64_t seed) {
    json doc = reference_common();
    json ivs = json::array();
    for (const Interval& iv : bands) ivs.push_back({iv.lo, iv.hi});
    doc["search"] = {{"intervals", json::array({ivs})},
                     {"max_trials", SearchSpec::kDefaultMaxTrials},
                     {"seed", seed},
                     {"sep_min", PoleSet::kDefaultSeparation}};
    return doc;
}

}  // namespace nosreg
