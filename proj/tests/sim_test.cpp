#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nosreg/errors.hpp"
#include "nosreg/reference_problem.hpp"
#include "nosreg/sim.hpp"
#include "oracles.hpp"

using namespace nosreg;

namespace {

RegulatorGains reference_gains(const std::vector<double>& poles) {
    return synthesize(assemble_mimo({4}), reference::exosystem(), reference::kXi0, {PoleSet(poles)});
}

RegulatorGains zero_gains(std::size_t p, std::size_t n, std::size_t m) {
    RegulatorGains g;
    g.F = Mat(p, n);
    g.G = Mat(p, m);
    return g;
}

}  // namespace

TEST_CASE("rk4_step: constant state") {
    const Derivative zero = [](double, const Vec& z) { return Vec(z.size(), 0.0); };
    CHECK(rk4_step(zero, 0.0, Vec{1.0, -2.0}, 0.1) == Vec{1.0, -2.0});
}

TEST_CASE("rk4_step: decay test equation") {
    const Derivative decay = [](double, const Vec& z) { return Vec{-z[0]}; };
    // RK4 on z' = -z gives the degree-4 Taylor polynomial of e^{-h}.
    const double h = 0.1;
    const double taylor = 1 - h + h * h / 2 - h * h * h / 6 + h * h * h * h / 24;
    const Vec z = rk4_step(decay, 0.0, Vec{1.0}, h);
    CHECK(z[0] == doctest::Approx(taylor).epsilon(1e-15));
    CHECK(std::abs(z[0] - 0.9048375) <= 1e-7);
    CHECK(std::abs(z[0] - std::exp(-h)) <= h * h * h * h * h / 120);
}

TEST_CASE("rk4_step: exosystem rotation over a quarter period") {
    const Exosystem exo = reference::exosystem();
    const Derivative rot = [&](double, const Vec& w) { return exo.S * w; };
    const std::size_t steps = 1571;
    const double h = (std::numbers::pi / 2) / static_cast<double>(steps);
    Vec w = exo.w0;
    for (std::size_t k = 0; k < steps; ++k) w = rk4_step(rot, static_cast<double>(k) * h, w, h);
    CHECK(std::abs(w[0]) <= 1e-9);
    CHECK(std::abs(w[1] + 1.0) <= 1e-9);
}

TEST_CASE("rk4_step: non-finite state reports the time") {
    const Derivative blow = [](double, const Vec& z) { return Vec{z[0] * 1e300}; };
    try {
        rk4_step(blow, 2.0, Vec{1e10}, 0.5);
        FAIL("expected NonFiniteState");
    } catch (const NonFiniteState& e) {
        CHECK(e.time() == doctest::Approx(2.5));
    }
}

TEST_CASE("detect_overshoot") {
    auto one = [](std::initializer_list<double> xs) {
        std::vector<Vec> out;
        for (double x : xs) out.push_back(Vec{x});
        return out;
    };
    SUBCASE("monotone decay") {
        const OvershootReport r = detect_overshoot(one({1, 0.5, 0.2, 0.05}), 1e-9);
        CHECK_FALSE(r.outputs[0].sign_changed);
        CHECK(r.outputs[0].final_abs_error == doctest::Approx(0.05));
    }
    SUBCASE("crossing between samples 2 and 3") {
        const std::vector<Vec> e = one({1, 0.5, -0.1});
        const Vec t{0.0, 1.0, 2.0};
        const OvershootReport r = detect_overshoot(e, 1e-9, t);
        CHECK(r.outputs[0].sign_changed);
        CHECK(r.outputs[0].first_crossing_sample == 2u);
        CHECK(r.outputs[0].first_crossing_time == 2.0);
    }
    SUBCASE("never leaves the band") {
        CHECK_FALSE(detect_overshoot(one({0, 0, 0}), 1e-9).any_sign_change());
    }
    SUBCASE("reference sign taken outside the band") {
        CHECK_FALSE(detect_overshoot(one({0, -1e-12, 0.3, 0.1, 1e-10, -5e-10}), 1e-9).any_sign_change());
        CHECK(detect_overshoot(one({0, -1e-12, 0.3, -2e-9}), 1e-9).any_sign_change());
    }
    SUBCASE("per-output reports") {
        const OvershootReport r = detect_overshoot(std::vector<Vec>{{1, -1}, {0.5, 0.5}}, 1e-9);
        CHECK_FALSE(r.outputs[0].sign_changed);
        CHECK(r.outputs[1].sign_changed);
    }
    CHECK_THROWS_AS(detect_overshoot(std::vector<Vec>{}, 1e-9), InvalidArgument);
}

TEST_CASE("simulate_linear: on-manifold start tracks exactly") {
    const Exosystem exo = reference::exosystem();
    const RegulatorGains g = reference_gains(reference::kPoles1);
    const Vec xi0 = g.subsystems[0].Pi * exo.w0;
    const SimResult r = simulate_linear(assemble_mimo({4}), exo, g, xi0, SimConfig{1e-3, 10.0, 10, 1e-9});
    double worst = 0.0;
    for (const Vec& e : r.trajectory.e) worst = std::max(worst, std::abs(e[0]));
    CHECK(worst <= 1e-9);
    CHECK_FALSE(r.report.any_sign_change());
}

TEST_CASE("simulate_linear: reference offset follows the modal response") {
    const RegulatorGains g = reference_gains(reference::kPoles1);
    const SimResult r =
        simulate_linear(assemble_mimo({4}), reference::exosystem(), g, reference::kXi0, SimConfig{});
    const ModalDecomposition d = modal_coeffs(PoleSet(reference::kPoles1), reference::kNominalIc);
    CHECK(r.trajectory.e.front()[0] == doctest::Approx(1.0));
    double err = 0.0;
    for (std::size_t k = 0; k < r.trajectory.size(); ++k)
        err = std::max(err, std::abs(r.trajectory.e[k][0] + natural_response(d, r.trajectory.times[k])));
    CHECK(err <= 1e-6);
    CHECK_FALSE(r.report.any_sign_change());
    CHECK(r.report.outputs[0].final_abs_error < 1e-2);
    CHECK(r.trajectory.times.back() == doctest::Approx(40.0));
}

TEST_CASE("simulate_linear: quiescent system stays at zero") {
    const Exosystem exo(Mat{{0, 1}, {-1, 0}}, Mat{{1, 0}}, Vec{0, 0});
    const SimResult r =
        simulate_linear(assemble_mimo({4}), exo, reference_gains(reference::kPoles2), Vec(4, 0.0), SimConfig{});
    for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
        CHECK(r.trajectory.e[k][0] == 0.0);
        CHECK(r.trajectory.x[k] == Vec(4, 0.0));
    }
}

TEST_CASE("simulate_linear: unstable loop is caught") {
    const MimoChain chain = assemble_mimo({1});
    const Exosystem exo(Mat{{0.0}}, Mat{{1.0}}, Vec{0.0});
    RegulatorGains g = zero_gains(1, 1, 1);
    g.F(0, 0) = 1000.0;
    CHECK_THROWS_AS(simulate_linear(chain, exo, g, Vec{1.0}, SimConfig{1e-3, 5.0, 10, 1e-9}), NonFiniteState);
}

TEST_CASE("simulate_linear: no sign change for random certified MIMO designs") {
    std::mt19937_64 rng(41);
    int done = 0;
    while (done < 25) {
        const std::vector<std::size_t> degrees{1 + static_cast<std::size_t>(done % 3), 2 + static_cast<std::size_t>(done % 2)};
        const MimoChain chain = assemble_mimo(degrees);
        const Exosystem exo(Mat{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}, Mat{{1, 0.5, 0}, {-1, 0, 0.3}},
                            Vec{oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1), 0.0});
        Vec xi0(chain.total_order);
        for (auto& x : xi0) x = oracle::uniform(rng, -2, 2);
        std::vector<PoleSet> poles;
        for (std::size_t d : degrees) poles.emplace_back(oracle::random_poles(rng, d, -6.0, -0.5, 0.2));
        RegulatorGains g;
        try {
            g = synthesize(chain, exo, xi0, poles);
        } catch (const CertificateFailed&) {
            continue;
        }
        ++done;
        const SimResult r = simulate_linear(chain, exo, g, xi0, SimConfig{1e-3, 30.0, 10, 1e-9});
        CHECK_FALSE(r.report.any_sign_change());
    }
}

TEST_CASE("reference plant: equilibrium and output map") {
    const NonlinearPlant p = reference::plant();
    CHECK(p.dynamics(Vec(4, 0.0), Vec{2.5}) == Vec{0, 0, 0, 2.5});
    CHECK(p.output(Vec(4, 0.0)) == Vec{0.0});
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        Vec x(4);
        for (auto& v : x) v = oracle::uniform(rng, -3, 3);
        CHECK(p.normal_map(x)[0] == p.output(x)[0]);
        const Vec back = reference::state_from_normal(p.normal_map(x));
        for (std::size_t k = 0; k < 4; ++k) CHECK(back[k] == doctest::Approx(x[k]).epsilon(1e-10));
    }
    CHECK(reference::state_from_normal(reference::kXi0) == Vec{0.0, 2.0, -5.0, -4.0});
    CHECK(p.normal_map(reference::kAltX0) == Vec{1.0, 3.0, 1.0, 16.0});
}

TEST_CASE("reference plant: Lie derivatives by finite differences") {
    // Along the drift f (u = 0): d/dt xi_k = xi_{k+1} for k < 4 and
    // d/dt xi_4 = L_f^4 h, the quantity the linearizing feedback cancels.
    const NonlinearPlant p = reference::plant();
    std::mt19937_64 rng(43);
    const double h = 1e-5;
    for (int i = 0; i < 200; ++i) {
        Vec x(4);
        for (auto& v : x) v = oracle::uniform(rng, -2, 2);
        const Vec f = p.dynamics(x, Vec{0.0});
        Vec xp(4), xm(4);
        for (std::size_t k = 0; k < 4; ++k) {
            xp[k] = x[k] + h * f[k];
            xm[k] = x[k] - h * f[k];
        }
        const Vec tp = p.normal_map(xp), tm = p.normal_map(xm), t0 = p.normal_map(x);
        for (std::size_t k = 0; k < 4; ++k) {
            const double deriv = (tp[k] - tm[k]) / (2 * h);
            const double want = k < 3 ? t0[k + 1] : reference::lf4h(x);
            CHECK(std::abs(deriv - want) <= 1e-5 * std::max(1.0, std::abs(want)));
        }
        // The alternative cubic term 40 x2 x3^3 in place of 40 x1^3 x2 does not match.
        const double x1 = x[0], x2 = x[1], x3 = x[2];
        const double alt = reference::lf4h(x) - 40 * x1 * x1 * x1 * x2 + 40 * x2 * x3 * x3 * x3;
        if (std::abs(alt - reference::lf4h(x)) > 1e-3) {
            const double deriv = (tp[3] - tm[3]) / (2 * h);
            CHECK(std::abs(deriv - alt) > 1e-4);
        }
    }
}

TEST_CASE("simulate_nonlinear: reference plant does not overshoot") {
    const Vec x0 = reference::state_from_normal(reference::kXi0);
    const SimResult r = simulate_nonlinear(reference::plant(), reference::exosystem(),
                                           reference_gains(reference::kPoles1), x0, SimConfig{});
    CHECK_FALSE(r.report.any_sign_change());
    CHECK(r.report.outputs[0].final_abs_error < 1e-2);
    CHECK(r.trajectory.e.front()[0] == doctest::Approx(1.0));
}

TEST_CASE("simulate_nonlinear: the uncertified alternative start misses the slow-set error bound") {
    // T(kAltX0) = (1, 3, 1, 16); the gains do not depend on the start.
    CHECK(reference::plant().normal_map(reference::kAltX0) == Vec{1.0, 3.0, 1.0, 16.0});
    const SimResult r = simulate_nonlinear(reference::plant(), reference::exosystem(),
                                           reference_gains(reference::kPoles1), reference::kAltX0, SimConfig{});
    CHECK_FALSE(r.report.any_sign_change());
    CHECK(r.report.outputs[0].final_abs_error > 1e-2);
}

TEST_CASE("simulate_nonlinear: matches the linear normal form") {
    const Vec x0 = reference::state_from_normal(reference::kXi0);
    const SimConfig cfg{1e-3, 10.0, 10, 1e-9};
    for (const auto* poles : {&reference::kPoles1, &reference::kPoles2, &reference::kPoles3}) {
        const RegulatorGains g = reference_gains(*poles);
        const SimResult nl = simulate_nonlinear(reference::plant(), reference::exosystem(), g, x0, cfg);
        const SimResult lin = simulate_linear(assemble_mimo({4}), reference::exosystem(), g, reference::kXi0, cfg);
        REQUIRE(nl.trajectory.size() == lin.trajectory.size());
        double err = 0.0;
        for (std::size_t k = 0; k < nl.trajectory.size(); ++k)
            err = std::max(err, std::abs(nl.trajectory.y[k][0] - lin.trajectory.y[k][0]));
        CHECK(err <= 1e-5);
    }
}

TEST_CASE("simulate_nonlinear: step halving changes no sample by more than 1e-7") {
    const Vec x0 = reference::state_from_normal(reference::kXi0);
    const RegulatorGains g = reference_gains(reference::kPoles1);
    const SimResult coarse =
        simulate_nonlinear(reference::plant(), reference::exosystem(), g, x0, SimConfig{1e-3, 40.0, 10, 1e-9});
    const SimResult fine =
        simulate_nonlinear(reference::plant(), reference::exosystem(), g, x0, SimConfig{5e-4, 40.0, 20, 1e-9});
    REQUIRE(coarse.trajectory.size() == fine.trajectory.size());
    double err = 0.0;
    for (std::size_t k = 0; k < coarse.trajectory.size(); ++k)
        err = std::max(err, std::abs(coarse.trajectory.y[k][0] - fine.trajectory.y[k][0]));
    CHECK(err <= 1e-7);
}

TEST_CASE("simulate_nonlinear: faster pole sets converge faster") {
    const Vec x0 = reference::state_from_normal(reference::kXi0);
    const SimConfig cfg{1e-3, 2.0, 10, 1e-9};
    const SimResult slow =
        simulate_nonlinear(reference::plant(), reference::exosystem(), reference_gains(reference::kPoles1), x0, cfg);
    const SimResult fast =
        simulate_nonlinear(reference::plant(), reference::exosystem(), reference_gains(reference::kPoles3), x0, cfg);
    CHECK(fast.report.outputs[0].final_abs_error < slow.report.outputs[0].final_abs_error);
}

TEST_CASE("simulate_nonlinear: with v = 0 the input is the pure linearizing effort") {
    const NonlinearPlant p = reference::plant();
    const Exosystem exo = reference::exosystem();
    const Vec x0 = reference::state_from_normal(reference::kXi0);
    const SimResult r = simulate_nonlinear(p, exo, zero_gains(1, 4, 2), x0, SimConfig{1e-3, 1.0, 10, 1e-9});
    for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
        const double t = r.trajectory.times[k];
        CHECK(r.trajectory.v[k][0] == 0.0);
        CHECK(r.trajectory.u[k][0] == doctest::Approx(-reference::lf4h(r.trajectory.x[k])));
        // xi follows the open chain: xi_1(t) = xi1 + xi2 t + xi3 t^2/2 + xi4 t^3/6
        const Vec& xi = reference::kXi0;
        const double y = xi[0] + xi[1] * t + xi[2] * t * t / 2 + xi[3] * t * t * t / 6;
        CHECK(std::abs(r.trajectory.y[k][0] - y) <= 1e-9);
    }
}

TEST_CASE("simulate_nonlinear: zero everything stays at zero") {
    const Exosystem exo(Mat{{0, 1}, {-1, 0}}, Mat{{1, 0}}, Vec{0, 0});
    const SimResult r =
        simulate_nonlinear(reference::plant(), exo, zero_gains(1, 4, 2), Vec(4, 0.0), SimConfig{1e-3, 5.0, 10, 1e-9});
    for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
        CHECK(r.trajectory.x[k] == Vec(4, 0.0));
        CHECK(r.trajectory.u[k] == Vec{0.0});
    }
}

TEST_CASE("simulate_nonlinear: dimension checks") {
    const RegulatorGains g = reference_gains(reference::kPoles1);
    CHECK_THROWS_AS(simulate_nonlinear(reference::plant(), reference::exosystem(), g, Vec{1.0, 2.0}, SimConfig{}),
                    DimensionMismatch);
    CHECK_THROWS_AS(simulate_nonlinear(reference::plant(), reference::exosystem(), zero_gains(1, 3, 2), Vec(4, 0.0),
                                       SimConfig{}),
                    DimensionMismatch);
    CHECK_THROWS_AS(simulate_linear(assemble_mimo({4}), reference::exosystem(), g, Vec(4, 0.0), SimConfig{0.0}),
                    InvalidArgument);
}

TEST_CASE("write_trajectory_csv: header and precision") {
    const SimResult r = simulate_linear(assemble_mimo({4}), reference::exosystem(), reference_gains(reference::kPoles1),
                                        reference::kXi0, SimConfig{1e-3, 0.02, 10, 1e-9});
    std::ostringstream os;
    write_trajectory_csv(os, r.trajectory);
    std::istringstream in(os.str());
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "t,x1,x2,x3,x4,w1,w2,y1,r1,e1,u1,v1");
    int rows = 0;
    while (std::getline(in, row)) ++rows;
    CHECK(rows == 3);
    // 17 significant digits round-trip every double.
    std::istringstream again(os.str());
    std::getline(again, header);
    std::getline(again, row);
    std::getline(again, row);
    const double t1 = std::stod(row.substr(0, row.find(',')));
    CHECK(t1 == r.trajectory.times[1]);
}
