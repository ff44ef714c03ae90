#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "nosreg/chainmodel.hpp"
#include "nosreg/numerics.hpp"
#include "nosreg/regulation.hpp"

namespace nosreg {

struct SimConfig {
    double step = 1e-3;            // seconds
    double horizon = 40.0;         // seconds
    std::size_t record_stride = 10;
    double zero_band = 1e-9;

    void validate() const;
    std::size_t steps() const;
};

// Recorded samples on the uniform grid t_k = k * step * record_stride.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> x;  // plant state (chain coordinates for linear runs)
    std::vector<Vec> w;  // exosystem state
    std::vector<Vec> y;
    std::vector<Vec> r;
    std::vector<Vec> e;  // r - y
    std::vector<Vec> u;
    std::vector<Vec> v;

    std::size_t size() const noexcept { return times.size(); }
};

struct OutputOvershoot {
    bool sign_changed = false;
    std::optional<std::size_t> first_crossing_sample;  // first sample with the opposite sign
    std::optional<double> first_crossing_time;
    double final_abs_error = 0.0;
};

struct OvershootReport {
    std::vector<OutputOvershoot> outputs;

    bool any_sign_change() const;
};

struct SimResult {
    Trajectory trajectory;
    OvershootReport report;
};

using Derivative = std::function<Vec(double, const Vec&)>;

// One classical fourth-order Runge-Kutta step. Throws NonFiniteState when
// the result contains NaN or Inf.
Vec rk4_step(const Derivative& deriv, double t, const Vec& z, double h);

// Per output: the reference sign is that of the first sample outside
// zero_band; a sign change is any later sample beyond zero_band with the
// opposite sign. `times`, when given, must match `errors` in length.
OvershootReport detect_overshoot(std::span<const Vec> errors, double zero_band, std::span<const double> times = {});

// xi' = Ac xi + Bc (F xi + G w), w' = S w, y = Cc xi, r = H w.
SimResult simulate_linear(const MimoChain& mimo, const Exosystem& exo, const RegulatorGains& gains,
                          std::span<const double> xi0, const SimConfig& cfg);

// Closes the loop through the plant's linearizing feedback: at every
// derivative evaluation xi = T(x), v = F xi + G w, u = linearizing_feedback(x, v).
SimResult simulate_nonlinear(const NonlinearPlant& plant, const Exosystem& exo, const RegulatorGains& gains,
                             std::span<const double> x0, const SimConfig& cfg);

// Header `t,x1..xn,w1..wm,y1..yp,r1..rp,e1..ep,u1..up,v1..vp`, one row per
// recorded sample, 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace nosreg
