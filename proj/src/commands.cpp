#include "nosreg/commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "nosreg/acceptance.hpp"
#include "nosreg/config.hpp"
#include "nosreg/gains_io.hpp"
#include "nosreg/plot.hpp"
#include "nosreg/polesearch.hpp"
#include "nosreg/regulation.hpp"
#include "nosreg/sim.hpp"

namespace nosreg {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string fmt(const Vec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s + "]";
}

void print_summary(std::ostream& out, const RegulatorGains& gains) {
    for (std::size_t j = 0; j < gains.subsystems.size(); ++j) {
        const SubsystemGains& s = gains.subsystems[j];
        out << "subsystem " << j << " (order " << s.F.cols() << ")\n"
            << "  poles      " << fmt(s.poles.values()) << "\n"
            << "  F          " << fmt(s.F.row_vec(0)) << "\n"
            << "  G          " << fmt(s.G.row_vec(0)) << "\n"
            << "  nominal ic " << fmt(s.nominal_ic) << "\n"
            << "  alpha      " << fmt(s.cert.alpha) << "\n";
        if (s.cert.zero_response) {
            out << "  certificate: passed (zero nominal offset, no transient)\n";
        } else {
            out << "  certificate: p = " << fmt(s.cert.p_value) << (s.cert.passed ? " (passed)" : " (failed)") << "\n";
        }
    }
}

template <typename Body>
int guarded(std::ostream& err, Body body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace

int exit_code_for(const Error& e) {
    switch (e.category()) {
        case ErrorCategory::Validation:
            return kExitValidation;
        case ErrorCategory::Synthesis:
            return kExitSynthesis;
        case ErrorCategory::Search:
            return kExitSearchExhausted;
        case ErrorCategory::Simulation:
            return kExitSimulation;
    }
    return kExitFailure;
}

int cmd_design(const std::filesystem::path& config, const std::filesystem::path& gains_out, std::ostream& out,
               std::ostream& err) {
    return guarded(err, [&] {
        const ProblemConfig cfg = load_config(config);
        if (cfg.poles.empty()) throw ConfigError("poles", "design needs explicit pole lists");
        GainsFile file{cfg.degrees, synthesize(cfg.mimo(), cfg.exo, cfg.normal_ic(), cfg.pole_sets()), std::nullopt};
        save_gains(gains_out, file);
        print_summary(out, file.gains);
        out << "wrote " << gains_out.string() << "\n";
        return int{kExitOk};
    });
}

int cmd_search(const std::filesystem::path& config, std::optional<std::uint64_t> seed,
               const std::filesystem::path& gains_out, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ProblemConfig cfg = load_config(config);
        if (cfg.intervals.empty()) throw ConfigError("search.intervals", "search needs pole intervals");
        const std::uint64_t base_seed = seed.value_or(cfg.seed);
        const MimoChain mimo = cfg.mimo();
        const std::vector<Vec> blocks = split_state(cfg.normal_ic(), cfg.degrees);

        std::vector<PoleSet> found;
        SearchRecord record{base_seed, cfg.max_trials, {}};
        bool exhausted = false;
        for (std::size_t j = 0; j < mimo.outputs(); ++j) {
            const SylvesterSolution syl = solve_sylvester(mimo.block(j), cfg.exo, cfg.exo.H.block(j, 0, 1, cfg.exo.dim()));
            const Vec x_tilde = nominal_ic(blocks[j], syl.Pi, cfg.exo.w0);
            // Subsystems draw from independent streams derived from the base seed.
            const SearchSpec spec{cfg.intervals[j], cfg.max_trials, base_seed + j, cfg.sep_min};
            try {
                SearchResult r = search(spec, x_tilde);
                out << "subsystem " << j << ": certified after " << r.trials_used << " trials\n";
                record.trials_used.push_back(r.trials_used);
                found.push_back(std::move(r.poles));
            } catch (const SearchExhausted& e) {
                err << "error: subsystem " << j << ": " << e.what() << "\n";
                exhausted = true;
            }
        }
        if (exhausted) return int{kExitSearchExhausted};

        GainsFile file{cfg.degrees, synthesize(mimo, cfg.exo, cfg.normal_ic(), found), record};
        save_gains(gains_out, file);
        print_summary(out, file.gains);
        out << "seed " << base_seed << ", wrote " << gains_out.string() << "\n";
        return int{kExitOk};
    });
}

int cmd_simulate(const std::filesystem::path& config, const std::filesystem::path& gains,
                 const std::filesystem::path& csv_out, const std::filesystem::path& plot_out, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        const ProblemConfig cfg = load_config(config);
        const GainsFile file = load_gains(gains);
        if (file.degrees != cfg.degrees) throw ConfigError("gains.degrees", "do not match the config");
        if (file.gains.G.cols() != cfg.exo.dim()) throw ConfigError("gains.G", "does not match the exosystem size");

        const std::optional<NonlinearPlant> plant = cfg.plant();
        const SimResult result = plant ? simulate_nonlinear(*plant, cfg.exo, file.gains, *cfg.x0, cfg.sim)
                                       : simulate_linear(cfg.mimo(), cfg.exo, file.gains, *cfg.xi0, cfg.sim);

        {
            std::ofstream csv(csv_out);
            if (!csv) throw ConfigError(csv_out.string(), "cannot open for writing");
            write_trajectory_csv(csv, result.trajectory);
        }
        {
            std::ofstream gp(plot_out);
            if (!gp) throw ConfigError(plot_out.string(), "cannot open for writing");
            std::filesystem::path image = plot_out;
            image.replace_extension(".png");
            write_gnuplot_script(gp, csv_out, image,
                                 CsvLayout{result.trajectory.x.front().size(), cfg.exo.dim(), cfg.degrees.size()});
        }

        bool overshoot = false;
        for (std::size_t j = 0; j < result.report.outputs.size(); ++j) {
            const OutputOvershoot& o = result.report.outputs[j];
            out << "output " << j << ": ";
            if (o.sign_changed) {
                overshoot = true;
                out << "SIGN CHANGE at t = " << fmt(*o.first_crossing_time);
            } else {
                out << "no sign change";
            }
            out << ", final |e| = " << fmt(o.final_abs_error) << "\n";
        }
        out << "wrote " << csv_out.string() << " and " << plot_out.string() << "\n";
        return int{overshoot ? kExitSimulation : kExitOk};
    });
}

int cmd_reproduce_example(const AcceptanceOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::vector<CriterionResult> results = run_acceptance(options);
        print_acceptance(out, results);
        std::vector<int> failed;
        for (const auto& r : results)
            if (!r.passed) failed.push_back(r.id);
        if (failed.empty()) return int{kExitOk};
        err << "failed criteria:";
        for (int id : failed) err << ' ' << id;
        err << "\n";
        return int{kExitFailure};
    });
}

}  // namespace nosreg
