#include "nosreg/gains_io.hpp"

#include <fstream>

#include "nosreg/errors.hpp"

namespace nosreg {

using nlohmann::json;

namespace {

json mat_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vec(r));
    return rows;
}

Mat json_mat(const json& v, const std::string& field) {
    if (!v.is_array() || v.empty() || !v.front().is_array()) throw ConfigError(field, "expected an array of rows");
    const std::size_t cols = v.front().size();
    Vec entries;
    for (const json& row : v) {
        if (!row.is_array() || row.size() != cols) throw ConfigError(field, "ragged matrix");
        for (const json& x : row) {
            if (!x.is_number()) throw ConfigError(field, "expected numbers");
            entries.push_back(x.get<double>());
        }
    }
    return Mat(v.size(), cols, std::move(entries));
}

Vec json_vec(const json& v, const std::string& field) {
    if (!v.is_array()) throw ConfigError(field, "expected an array");
    Vec out;
    for (const json& x : v) {
        if (!x.is_number()) throw ConfigError(field, "expected numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ConfigError(where + key, "missing");
    return obj.at(key);
}

}  // namespace

json gains_to_json(const GainsFile& file) {
    json subs = json::array();
    for (std::size_t j = 0; j < file.gains.subsystems.size(); ++j) {
        const SubsystemGains& s = file.gains.subsystems[j];
        json entry{{"poles", s.poles.values()},
                   {"F", s.F.row_vec(0)},
                   {"G", s.G.row_vec(0)},
                   {"Pi", mat_json(s.Pi)},
                   {"Gamma", s.Gamma.row_vec(0)},
                   {"nominal_ic", s.nominal_ic},
                   {"alpha", s.cert.alpha},
                   {"c", s.cert.c},
                   {"p_value", s.cert.p_value},
                   {"zero_response", s.cert.zero_response},
                   {"certificate_passed", s.cert.passed}};
        if (file.search) entry["trials_used"] = file.search->trials_used.at(j);
        subs.push_back(std::move(entry));
    }
    json doc{{"format", kGainsFormat},
             {"degrees", file.degrees},
             {"subsystems", std::move(subs)},
             {"F", mat_json(file.gains.F)},
             {"G", mat_json(file.gains.G)}};
    if (file.search) doc["search"] = {{"seed", file.search->seed}, {"max_trials", file.search->max_trials}};
    return doc;
}

GainsFile gains_from_json(const json& doc) {
    try {
        if (!doc.is_object() || doc.value("format", "") != kGainsFormat) {
            throw ConfigError("format", std::string("expected \"") + kGainsFormat + "\"");
        }
        GainsFile file;
        for (const json& d : field(doc, "degrees", "")) file.degrees.push_back(d.get<std::size_t>());
        const MimoChain mimo = assemble_mimo(file.degrees);

        const json& subs = field(doc, "subsystems", "");
        if (!subs.is_array() || subs.size() != file.degrees.size()) {
            throw ConfigError("subsystems", "needs one entry per output");
        }
        std::vector<SubsystemGains> parts;
        std::vector<std::size_t> trials;
        for (std::size_t j = 0; j < subs.size(); ++j) {
            const std::string where = "subsystems[" + std::to_string(j) + "].";
            const json& s = subs[j];
            Certificate cert;
            cert.alpha = json_vec(field(s, "alpha", where), where + "alpha");
            cert.c = field(s, "c", where).get<std::vector<int>>();
            cert.p_value = field(s, "p_value", where).get<double>();
            cert.zero_response = field(s, "zero_response", where).get<bool>();
            cert.passed = field(s, "certificate_passed", where).get<bool>();
            PoleSet poles(json_vec(field(s, "poles", where), where + "poles"), 0.0);
            parts.push_back(SubsystemGains{Mat::row(json_vec(field(s, "F", where), where + "F")),
                                           Mat::row(json_vec(field(s, "G", where), where + "G")),
                                           json_mat(field(s, "Pi", where), where + "Pi"),
                                           Mat::row(json_vec(field(s, "Gamma", where), where + "Gamma")),
                                           std::move(poles), json_vec(field(s, "nominal_ic", where), where + "nominal_ic"),
                                           std::move(cert)});
            if (s.contains("trials_used")) trials.push_back(s.at("trials_used").get<std::size_t>());
        }
        file.gains = assemble_gains(mimo, std::move(parts));

        // The assembled matrices are redundant; they must agree with the blocks.
        if (!(json_mat(field(doc, "F", ""), "F") == file.gains.F)) {
            throw ConfigError("F", "does not match the per-subsystem gains");
        }
        if (!(json_mat(field(doc, "G", ""), "G") == file.gains.G)) {
            throw ConfigError("G", "does not match the per-subsystem gains");
        }
        if (doc.contains("search")) {
            SearchRecord rec;
            rec.seed = field(doc.at("search"), "seed", "search.").get<std::uint64_t>();
            rec.max_trials = field(doc.at("search"), "max_trials", "search.").get<std::size_t>();
            rec.trials_used = std::move(trials);
            file.search = std::move(rec);
        }
        return file;
    } catch (const json::exception& e) {
        throw ConfigError("gains", e.what());
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("gains", e.what());
    }
}

void save_gains(const std::filesystem::path& path, const GainsFile& file) {
    std::ofstream out(path);
    if (!out) throw ConfigError(path.string(), "cannot open for writing");
    out << gains_to_json(file).dump(2) << '\n';
    if (!out) throw ConfigError(path.string(), "write failed");
}

GainsFile load_gains(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), "cannot open");
    try {
        return gains_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string(), e.what());
    }
}

}  // namespace nosreg
