#include "nosreg/acceptance.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>

#include "nosreg/commands.hpp"
#include "nosreg/config.hpp"
#include "nosreg/gains_io.hpp"
#include "nosreg/modal.hpp"
#include "nosreg/noscert.hpp"
#include "nosreg/reference_problem.hpp"
#include "nosreg/regulation.hpp"
#include "nosreg/sim.hpp"

namespace nosreg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string fmt_vec(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt("%.4g", v[i]);
    return s + ")";
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Sorted poles in [lo, hi] with pairwise gaps of at least `gap`.
std::vector<double> random_poles(std::mt19937_64& rng, std::size_t n, double lo, double hi, double gap) {
    for (;;) {
        std::vector<double> p(n);
        for (auto& x : p) x = uniform(rng, lo, hi);
        std::sort(p.begin(), p.end());
        bool ok = true;
        for (std::size_t i = 1; i < n; ++i) ok = ok && p[i] - p[i - 1] >= gap;
        if (ok) return p;
    }
}

// Coefficients of det(sI - M) by the Faddeev-LeVerrier recursion, low to
// high, monic term dropped.
Vec char_poly(const Mat& m) {
    const std::size_t n = m.rows();
    Vec coeff(n + 1, 0.0);
    coeff[n] = 1.0;
    Mat mk(n, n, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk + coeff[n - k + 1] * Mat::identity(n);
        const Mat am = m * mk;
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
        coeff[n - k] = -trace / static_cast<double>(k);
    }
    coeff.pop_back();
    return coeff;
}

bool changes_sign(const Vec& y, double band) {
    int ref = 0;
    for (double v : y) {
        if (std::abs(v) <= band) continue;
        const int s = v > 0 ? 1 : -1;
        if (ref == 0) ref = s;
        else if (s != ref) return true;
    }
    return false;
}

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_json(const std::filesystem::path& p, const nlohmann::json& doc) {
    std::ofstream out(p);
    out << doc.dump(2) << '\n';
}

RegulatorGains reference_gains(const std::vector<double>& poles) {
    const Vec xi0 = reference::plant().normal_map(reference::state_from_normal(reference::kXi0));
    return synthesize(assemble_mimo({4}), reference::exosystem(), xi0, {PoleSet(poles)});
}

// -- criteria ---------------------------------------------------------------

CriterionResult sylvester_reproduction() {
    CriterionResult r{1, "Sylvester reproduction", false, "", 0.0};
    const ChainSystem chain = make_chain(4);
    const Exosystem exo = reference::exosystem();
    const auto start = Clock::now();
    const SylvesterSolution s = solve_sylvester(chain, exo, exo.H);
    const double elapsed = seconds_since(start);

    const Mat pi{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Mat gamma{{1, 0}};
    const double err = std::max((s.Pi - pi).max_abs(), (s.Gamma - gamma).max_abs());
    r.passed = err <= 1e-9 && elapsed < 1e-3;
    r.detail = "max deviation " + fmt("%.2e", err) + ", solve " + fmt("%.3g", elapsed * 1e3) + " ms";
    return r;
}

CriterionResult gain_reproduction() {
    CriterionResult r{2, "gain reproduction", false, "", 0.0};
    const RegulatorGains g = reference_gains(reference::kPoles1);
    const Vec f_ref{-4.89, -51.6, -42.2, -11.4};
    const Vec g_ref{-36.3, 40.2};
    const Vec f = g.F.row_vec(0);
    const Vec gv = g.G.row_vec(0);
    double err = 0.0;
    for (std::size_t i = 0; i < 4; ++i) err = std::max(err, std::abs(f[i] - f_ref[i]));
    for (std::size_t i = 0; i < 2; ++i) err = std::max(err, std::abs(gv[i] - g_ref[i]));
    r.passed = err <= 0.05;
    r.detail = "F = " + fmt_vec(f) + ", G = " + fmt_vec(gv) + ", max deviation " + fmt("%.3g", err);
    return r;
}

CriterionResult modal_reproduction() {
    CriterionResult r{3, "modal coefficients", false, "", 0.0};
    const SylvesterSolution s = solve_sylvester(make_chain(4), reference::exosystem(), reference::exosystem().H);
    const Vec x_tilde = nominal_ic(reference::kXi0, s.Pi, reference::exosystem().w0);
    const Certificate c = certify(modal_coeffs(PoleSet(reference::kPoles1), x_tilde));
    const Vec alpha_ref{0.2468, -0.3236, -0.7734, -0.1499};
    double err = (x_tilde == reference::kNominalIc) ? 0.0 : 1.0;
    for (std::size_t i = 0; i < 4; ++i) err = std::max(err, std::abs(c.alpha[i] - alpha_ref[i]));
    r.passed = err <= 5e-4 && c.passed && c.p_value > 0.0 && std::abs(c.p_value - 0.6765) <= 1e-3;
    r.detail = "alpha = " + fmt_vec(c.alpha) + ", max deviation " + fmt("%.2e", err) + ", p = " +
               fmt("%.4f", c.p_value);
    return r;
}

CriterionResult pole_placement() {
    CriterionResult r{4, "pole placement", false, "", 0.0};
    const ChainSystem chain = make_chain(4);
    const struct {
        const std::vector<double>* poles;
        double first, last;
    } cases[] = {{&reference::kPoles2, 704.0, 23.8}, {&reference::kPoles3, 2740.0, 34.0}};

    bool ok = true;
    double worst_coeff = 0.0;
    double worst_mag = 0.0;
    for (const auto& c : cases) {
        const PoleSet poles(*c.poles);
        const Mat f = moore_feedback(poles, 4).F;
        const Vec got = char_poly(chain.A + chain.B * f);
        const Vec want = poles.characteristic_coefficients();
        for (std::size_t i = 0; i < 4; ++i) {
            worst_coeff = std::max(worst_coeff, std::abs(got[i] - want[i]) / std::abs(want[i]));
        }
        worst_mag = std::max(worst_mag, std::abs(std::abs(f(0, 0)) - c.first) / c.first);
        worst_mag = std::max(worst_mag, std::abs(std::abs(f(0, 3)) - c.last) / c.last);
    }
    ok = worst_coeff <= 1e-6 && worst_mag <= 0.01;
    r.passed = ok;
    r.detail = "coefficient rel. error " + fmt("%.2e", worst_coeff) + ", gain magnitude rel. error " +
               fmt("%.2e", worst_mag);
    return r;
}

CriterionResult nonlinear_nonovershoot(double step) {
    CriterionResult r{5, "nonlinear nonovershoot", false, "", 0.0};
    SimConfig cfg;
    cfg.step = step;
    cfg.horizon = 40.0;
    cfg.record_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(0.01 / step)));
    cfg.zero_band = 1e-9;
    const double dt = cfg.step * static_cast<double>(cfg.record_stride);
    const auto error_at = [&](const Trajectory& t, double time) {
        const auto k = static_cast<std::size_t>(std::lround(time / dt));
        return k < t.size() ? std::abs(t.e[k][0]) : INFINITY;
    };

    const NonlinearPlant plant = reference::plant();
    const Vec x0 = reference::state_from_normal(reference::kXi0);
    const struct {
        const std::vector<double>* poles;
        double check_time, bound;
    } cases[] = {{&reference::kPoles1, 40.0, 1e-2}, {&reference::kPoles2, 10.0, 1e-4}, {&reference::kPoles3, 10.0, 1e-4}};

    bool ok = true;
    std::string detail;
    const auto start = Clock::now();
    for (std::size_t i = 0; i < 3; ++i) {
        const RegulatorGains g = reference_gains(*cases[i].poles);
        std::string line = "L" + std::to_string(i + 1) + ": ";
        try {
            const SimResult res = simulate_nonlinear(plant, reference::exosystem(), g, x0, cfg);
            const bool crossed = res.report.any_sign_change();
            const double e = error_at(res.trajectory, cases[i].check_time);
            ok = ok && !crossed && e < cases[i].bound;
            line += (crossed ? "sign change" : "no sign change") + std::string(", |e(") +
                    fmt("%.0f", cases[i].check_time) + ")| = " + fmt("%.2e", e);
        } catch (const NonFiniteState& e) {
            ok = false;
            line += "diverged at t = " + fmt("%.3g", e.time());
        }
        detail += (i ? "; " : "") + line;
    }
    const double elapsed = seconds_since(start);
    r.passed = ok && elapsed < 5.0;
    r.detail = detail + "; " + fmt("%.2f", elapsed) + " s";
    return r;
}

CriterionResult soundness_sweep() {
    CriterionResult r{6, "certificate soundness sweep", false, "", 0.0};
    constexpr int kPerOrder = 10000;
    constexpr std::size_t kSamples = 2000;
    std::mt19937_64 rng(6);
    const auto start = Clock::now();

    std::size_t violations = 0;
    std::size_t drawn = 0;
    Vec y(kSamples);
    for (std::size_t n = 2; n <= 5; ++n) {
        int certified = 0;
        while (certified < kPerOrder) {
            ++drawn;
            const PoleSet poles(random_poles(rng, n, -6.0, -0.05, 0.05));
            Vec x0(n);
            for (auto& x : x0) x = uniform(rng, -5.0, 5.0);
            const ModalDecomposition d = modal_coeffs(poles, x0);
            const Certificate c = certify(d);
            if (!c.passed) continue;
            ++certified;
            double scale = 0.0;
            for (double a : d.alpha) scale = std::max(scale, std::abs(a));
            for (std::size_t k = 0; k < kSamples; ++k) {
                y[k] = natural_response(d, 60.0 * static_cast<double>(k) / static_cast<double>(kSamples - 1));
            }
            if (changes_sign(y, 1e-12 * scale)) ++violations;
        }
    }
    const double elapsed = seconds_since(start);
    r.passed = violations == 0 && elapsed < 30.0;
    r.detail = std::to_string(4 * kPerOrder) + " certified of " + std::to_string(drawn) + " drawn, " +
               std::to_string(violations) + " sign changes, " + fmt("%.2f", elapsed) + " s";
    return r;
}

// RK4 trajectory of the first state of x' = (A + B F) x on a uniform grid.
Vec simulate_chain_output(const Mat& closed_loop, const Vec& x0, double horizon, std::size_t steps) {
    const Derivative deriv = [&](double, const Vec& x) { return closed_loop * std::span<const double>(x); };
    const double h = horizon / static_cast<double>(steps);
    Vec y(steps + 1);
    Vec x = x0;
    y[0] = x[0];
    for (std::size_t k = 0; k < steps; ++k) {
        x = rk4_step(deriv, static_cast<double>(k) * h, x, h);
        y[k + 1] = x[0];
    }
    return y;
}

CriterionResult second_order_rule() {
    CriterionResult r{7, "second-order quadrant rule", false, "", 0.0};
    std::mt19937_64 rng(7);
    const ChainSystem chain = make_chain(2);
    const auto draw_x0 = [&] {
        const double s = rng() & 1 ? 1.0 : -1.0;
        return Vec{s * uniform(rng, 0.1, 5.0), -s * uniform(rng, 0.1, 5.0)};
    };

    std::size_t rejected = 0;
    std::size_t crossed = 0;
    for (int i = 0; i < 1000;) {
        const Vec x0 = draw_x0();
        const double ratio = x0[1] / x0[0];
        const double l2 = uniform(rng, -5.0, -0.2);
        const double hi = std::min(ratio, l2) - 1e-3;
        if (hi <= -20.0) continue;
        const PoleSet poles({uniform(rng, -20.0, hi), l2});
        ++i;
        if (!certify_n2(x0, poles).passed) ++rejected;
        const Mat f = moore_feedback(poles, 2).F;
        const Vec y = simulate_chain_output(chain.A + chain.B * f, x0, 12.0 / -l2, 4000);
        if (changes_sign(y, 1e-9 * std::abs(x0[0]))) ++crossed;
    }

    std::size_t misreported = 0;
    for (int i = 0; i < 100;) {
        const Vec x0 = draw_x0();
        const double ratio = x0[1] / x0[0];
        const double l2 = uniform(rng, -5.0, -0.2);
        if (ratio >= l2 - 2e-3) continue;
        const double l1 = uniform(rng, ratio + 1e-3, l2 - 1e-3);
        const QuadrantCertificate q = certify_n2(x0, PoleSet({l1, l2}));
        ++i;
        if (q.passed || !(q.q_value < 0.0)) ++misreported;
    }
    r.passed = rejected == 0 && crossed == 0 && misreported == 0;
    r.detail = "within bound: " + std::to_string(rejected) + " rejected, " + std::to_string(crossed) +
               " sign changes; violating: " + std::to_string(misreported) + " misreported";
    return r;
}

CriterionResult third_order_consistency() {
    CriterionResult r{8, "third-order closed form", false, "", 0.0};
    std::mt19937_64 rng(8);
    double worst = 0.0;
    std::size_t flag_mismatch = 0;
    for (int i = 0; i < 1000; ++i) {
        const PoleSet poles(random_poles(rng, 3, -8.0, -0.1, 0.05));
        Vec x0(3);
        for (auto& x : x0) x = uniform(rng, -5.0, 5.0);
        const ThirdOrderClosedForm cf = certify_n3_closedform(x0, poles);
        const Certificate num = certify(modal_coeffs(poles, x0));
        worst = std::max(worst, std::abs(cf.p_value - num.p_value) / std::max(1.0, std::abs(num.p_value)));
        if (cf.c1 != num.c[0] || cf.c2 != num.c[1]) ++flag_mismatch;
    }
    r.passed = worst <= 1e-9 && flag_mismatch == 0;
    r.detail = "max |dp| / max(1, |p|) = " + fmt("%.2e", worst) + ", " + std::to_string(flag_mismatch) +
               " flag mismatches";
    return r;
}

CriterionResult search_performance(const std::filesystem::path& dir) {
    CriterionResult r{9, "search performance", false, "", 0.0};
    const auto config = dir / "search.json";
    const auto gains = dir / "search_gains.json";
    write_json(config, reference_search_config(reference::kBands1, 1));
    std::ostringstream out, err;
    const auto start = Clock::now();
    const int rc = cmd_search(config, std::nullopt, gains, out, err);
    const double elapsed = seconds_since(start);
    if (rc != kExitOk) {
        r.detail = "exit " + std::to_string(rc) + ": " + err.str();
        return r;
    }
    const GainsFile file = load_gains(gains);
    const SubsystemGains& s = file.gains.subsystems.at(0);
    bool in_bands = true;
    for (std::size_t i = 0; i < 4; ++i) {
        in_bands = in_bands && s.poles[i] >= reference::kBands1[i].lo && s.poles[i] <= reference::kBands1[i].hi;
    }
    r.passed = s.cert.passed && in_bands && elapsed < 1.0;
    r.detail = "poles " + fmt_vec(s.poles.values()) + ", p = " + fmt("%.4g", s.cert.p_value) + ", " +
               std::to_string(file.search->trials_used.at(0)) + " trials, " + fmt("%.1f", elapsed * 1e3) + " ms";
    return r;
}

CriterionResult determinism(const std::filesystem::path& dir) {
    CriterionResult r{10, "determinism", false, "", 0.0};
    const auto config = dir / "determinism.json";
    write_json(config, reference_search_config(reference::kBands2, 42));
    std::ostringstream out, err;
    int rc = 0;
    for (int run = 0; run < 2 && rc == kExitOk; ++run) {
        const std::string tag = std::to_string(run);
        rc = cmd_search(config, std::nullopt, dir / ("gains" + tag + ".json"), out, err);
        if (rc == kExitOk) {
            rc = cmd_simulate(config, dir / "gains0.json", dir / ("traj" + tag + ".csv"), dir / ("traj" + tag + ".gp"),
                              out, err);
        }
    }
    if (rc != kExitOk) {
        r.detail = "exit " + std::to_string(rc) + ": " + err.str();
        return r;
    }
    const bool gains_same = read_bytes(dir / "gains0.json") == read_bytes(dir / "gains1.json");
    const std::string csv = read_bytes(dir / "traj0.csv");
    const bool csv_same = !csv.empty() && csv == read_bytes(dir / "traj1.csv");
    r.passed = gains_same && csv_same;
    r.detail = std::string("gains files ") + (gains_same ? "identical" : "differ") + ", CSVs " +
               (csv_same ? "identical" : "differ") + " (" + std::to_string(csv.size()) + " bytes)";
    return r;
}

template <typename Fn>
CriterionResult timed(int id, const char* name, Fn fn) {
    const auto start = Clock::now();
    CriterionResult r;
    try {
        r = fn();
    } catch (const std::exception& e) {
        r = CriterionResult{id, name, false, std::string("unexpected error: ") + e.what(), 0.0};
    }
    r.seconds = seconds_since(start);
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    namespace fs = std::filesystem;
    const bool own_dir = options.work_dir.empty();
    const fs::path dir =
        own_dir ? fs::temp_directory_path() / ("nosreg-acceptance-" + std::to_string(::getpid())) : options.work_dir;
    fs::create_directories(dir);

    std::vector<CriterionResult> results;
    results.push_back(timed(1, "Sylvester reproduction", sylvester_reproduction));
    results.push_back(timed(2, "gain reproduction", gain_reproduction));
    results.push_back(timed(3, "modal coefficients", modal_reproduction));
    results.push_back(timed(4, "pole placement", pole_placement));
    results.push_back(timed(5, "nonlinear nonovershoot", [&] { return nonlinear_nonovershoot(options.sim_step); }));
    results.push_back(timed(6, "certificate soundness sweep", soundness_sweep));
    results.push_back(timed(7, "second-order quadrant rule", second_order_rule));
    results.push_back(timed(8, "third-order closed form", third_order_consistency));
    results.push_back(timed(9, "search performance", [&] { return search_performance(dir); }));
    results.push_back(timed(10, "determinism", [&] { return determinism(dir); }));

    if (own_dir) {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    return results;
}

void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " (" << fmt("%.3f", r.seconds)
           << " s): " << r.detail << '\n';
    }
}

}  // namespace nosreg
