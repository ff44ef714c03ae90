#include "nosreg/sim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "nosreg/errors.hpp"

namespace nosreg {

void SimConfig::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidArgument("sim", "step must be positive");
    }
    if (!(horizon >= step) || !std::isfinite(horizon)) {
        throw InvalidArgument("sim", "horizon must be at least one step");
    }
    if (record_stride == 0) {
        throw InvalidArgument("sim", "record_stride must be positive");
    }
    if (!(zero_band >= 0.0)) {
        throw InvalidArgument("sim", "zero_band must be nonnegative");
    }
}

std::size_t SimConfig::steps() const { return static_cast<std::size_t>(std::llround(horizon / step)); }

bool OvershootReport::any_sign_change() const {
    for (const auto& o : outputs)
        if (o.sign_changed) return true;
    return false;
}

Vec rk4_step(const Derivative& deriv, double t, const Vec& z, double h) {
    const std::size_t n = z.size();
    auto axpy = [n](const Vec& base, double a, const Vec& d) {
        Vec out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + a * d[i];
        return out;
    };
    const Vec k1 = deriv(t, z);
    const Vec k2 = deriv(t + 0.5 * h, axpy(z, 0.5 * h, k1));
    const Vec k3 = deriv(t + 0.5 * h, axpy(z, 0.5 * h, k2));
    const Vec k4 = deriv(t + h, axpy(z, h, k3));
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = z[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!all_finite(out)) {
        throw NonFiniteState(t + h);
    }
    return out;
}

OvershootReport detect_overshoot(std::span<const Vec> errors, double zero_band, std::span<const double> times) {
    if (errors.empty()) {
        throw InvalidArgument("sim", "overshoot detection needs at least one sample");
    }
    if (!times.empty() && times.size() != errors.size()) {
        throw DimensionMismatch("sim", "times and error samples differ in length");
    }
    const std::size_t p = errors.front().size();
    OvershootReport report;
    report.outputs.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        OutputOvershoot& out = report.outputs[j];
        int ref_sign = 0;
        for (std::size_t k = 0; k < errors.size(); ++k) {
            const double e = errors[k].at(j);
            if (std::abs(e) <= zero_band) continue;
            const int s = e > 0.0 ? 1 : -1;
            if (ref_sign == 0) {
                ref_sign = s;
            } else if (s != ref_sign) {
                out.sign_changed = true;
                out.first_crossing_sample = k;
                if (!times.empty()) out.first_crossing_time = times[k];
                break;
            }
        }
        out.final_abs_error = std::abs(errors.back().at(j));
    }
    return report;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DimensionMismatch("sim", what);
}

struct Recorder {
    Trajectory traj;

    void push(double t, Vec x, Vec w, Vec y, Vec r, Vec u, Vec v) {
        Vec e(r.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = r[i] - y[i];
        traj.times.push_back(t);
        traj.x.push_back(std::move(x));
        traj.w.push_back(std::move(w));
        traj.y.push_back(std::move(y));
        traj.r.push_back(std::move(r));
        traj.e.push_back(std::move(e));
        traj.u.push_back(std::move(u));
        traj.v.push_back(std::move(v));
    }
};

// Feedback v = F xi + G w.
Vec regulator_input(const RegulatorGains& gains, const Vec& xi, std::span<const double> w) {
    Vec v = gains.F * xi;
    const Vec gw = gains.G * w;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += gw[i];
    return v;
}

Vec head(const Vec& z, std::size_t n) { return Vec(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)); }
Vec tail(const Vec& z, std::size_t n) { return Vec(z.begin() + static_cast<std::ptrdiff_t>(n), z.end()); }

// Integrates z = [x; w] from z0 and records every record_stride steps.
template <typename RecordFn>
Trajectory integrate(const Derivative& deriv, Vec z, const SimConfig& cfg, RecordFn record) {
    Recorder rec;
    const std::size_t n_steps = cfg.steps();
    record(rec, 0.0, z);
    for (std::size_t k = 1; k <= n_steps; ++k) {
        const double t_prev = static_cast<double>(k - 1) * cfg.step;
        z = rk4_step(deriv, t_prev, z, cfg.step);
        if (k % cfg.record_stride == 0) record(rec, static_cast<double>(k) * cfg.step, z);
    }
    return std::move(rec.traj);
}

}  // namespace

SimResult simulate_linear(const MimoChain& mimo, const Exosystem& exo, const RegulatorGains& gains,
                          std::span<const double> xi0, const SimConfig& cfg) {
    cfg.validate();
    const std::size_t n = mimo.total_order;
    const std::size_t m = exo.dim();
    const std::size_t p = mimo.outputs();
    require(xi0.size() == n, "initial chain state length");
    require(exo.outputs() == p, "exosystem outputs vs chains");
    require(gains.F.rows() == p && gains.F.cols() == n, "F shape");
    require(gains.G.rows() == p && gains.G.cols() == m, "G shape");

    const Derivative deriv = [&](double, const Vec& z) {
        const Vec xi = head(z, n);
        const Vec w = tail(z, n);
        const Vec v = regulator_input(gains, xi, w);
        Vec dz = mimo.Ac * xi;
        const Vec bv = mimo.Bc * v;
        for (std::size_t i = 0; i < n; ++i) dz[i] += bv[i];
        const Vec dw = exo.S * w;
        dz.insert(dz.end(), dw.begin(), dw.end());
        return dz;
    };

    Vec z0(xi0.begin(), xi0.end());
    z0.insert(z0.end(), exo.w0.begin(), exo.w0.end());
    if (!all_finite(z0)) throw NonFiniteState(0.0);

    SimResult out;
    out.trajectory = integrate(deriv, std::move(z0), cfg, [&](Recorder& rec, double t, const Vec& z) {
        Vec xi = head(z, n);
        Vec w = tail(z, n);
        Vec v = regulator_input(gains, xi, w);
        Vec y = mimo.Cc * xi;
        Vec r = exo.H * w;
        Vec u = v;
        rec.push(t, std::move(xi), std::move(w), std::move(y), std::move(r), std::move(u), std::move(v));
    });
    out.report = detect_overshoot(out.trajectory.e, cfg.zero_band, out.trajectory.times);
    return out;
}

SimResult simulate_nonlinear(const NonlinearPlant& plant, const Exosystem& exo, const RegulatorGains& gains,
                             std::span<const double> x0, const SimConfig& cfg) {
    cfg.validate();
    const Vec x_init(x0.begin(), x0.end());
    plant.validate(x_init);
    const std::size_t n = plant.state_dim;
    const std::size_t m = exo.dim();
    const std::size_t p = plant.input_dim;
    std::size_t total = 0;
    for (std::size_t d : plant.degrees) total += d;
    require(exo.outputs() == p, "exosystem outputs vs plant outputs");
    require(gains.F.rows() == p && gains.F.cols() == total, "F shape");
    require(gains.G.rows() == p && gains.G.cols() == m, "G shape");

    auto control = [&](const Vec& x, const Vec& w, Vec* v_out) {
        Vec v = regulator_input(gains, plant.normal_map(x), w);
        Vec u = plant.linearizing_feedback(x, v);
        if (v_out) *v_out = std::move(v);
        return u;
    };

    const Derivative deriv = [&](double, const Vec& z) {
        const Vec x = head(z, n);
        const Vec w = tail(z, n);
        Vec dz = plant.dynamics(x, control(x, w, nullptr));
        const Vec dw = exo.S * w;
        dz.insert(dz.end(), dw.begin(), dw.end());
        return dz;
    };

    Vec z0 = x_init;
    z0.insert(z0.end(), exo.w0.begin(), exo.w0.end());
    if (!all_finite(z0)) throw NonFiniteState(0.0);

    SimResult out;
    out.trajectory = integrate(deriv, std::move(z0), cfg, [&](Recorder& rec, double t, const Vec& z) {
        Vec x = head(z, n);
        Vec w = tail(z, n);
        Vec v;
        Vec u = control(x, w, &v);
        if (!all_finite(u)) throw NonFiniteState(t);
        Vec y = plant.output(x);
        Vec r = exo.H * w;
        rec.push(t, std::move(x), std::move(w), std::move(y), std::move(r), std::move(u), std::move(v));
    });
    out.report = detect_overshoot(out.trajectory.e, cfg.zero_band, out.trajectory.times);
    return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    if (traj.size() == 0) {
        throw InvalidArgument("sim", "cannot export an empty trajectory");
    }
    auto header = [&](const char* prefix, std::size_t count) {
        for (std::size_t i = 1; i <= count; ++i) os << ',' << prefix << i;
    };
    os << 't';
    header("x", traj.x.front().size());
    header("w", traj.w.front().size());
    header("y", traj.y.front().size());
    header("r", traj.r.front().size());
    header("e", traj.e.front().size());
    header("u", traj.u.front().size());
    header("v", traj.v.front().size());
    os << '\n';

    char buf[32];
    auto put = [&](double value) {
        std::snprintf(buf, sizeof buf, "%.17g", value);
        os << buf;
    };
    for (std::size_t k = 0; k < traj.size(); ++k) {
        put(traj.times[k]);
        for (const auto* series : {&traj.x, &traj.w, &traj.y, &traj.r, &traj.e, &traj.u, &traj.v}) {
            for (double value : (*series)[k]) {
                os << ',';
                put(value);
            }
        }
        os << '\n';
    }
}

}  // namespace nosreg
