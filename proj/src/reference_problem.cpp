#include "nosreg/reference_problem.hpp"

#include "nosreg/errors.hpp"

namespace nosreg::reference {

namespace {

void require_len(const Vec& v, std::size_t n, const char* what) {
    if (v.size() != n) throw DimensionMismatch("reference4", what);
}

}  // namespace

double lf4h(const Vec& x) {
    require_len(x, 4, "state length");
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    const double x1sq = x1 * x1;
    return 24.0 * x1sq * x1sq * x1 + 40.0 * x1sq * x1 * x2 + 16.0 * x1 * x2 * x2 + 10.0 * x1sq * x3 +
           6.0 * x2 * x3 + 2.0 * x1 * x4;
}

Vec state_from_normal(const Vec& xi) {
    require_len(xi, 4, "normal-form length");
    const double x1 = xi[0];
    const double x2 = xi[1] - x1 * x1;
    const double x3 = xi[2] - 2.0 * x1 * xi[1];
    const double x4 = xi[3] - 2.0 * x1 * x3 - (2.0 * x2 + 6.0 * x1 * x1) * xi[1];
    return {x1, x2, x3, x4};
}

NonlinearPlant plant() {
    NonlinearPlant p;
    p.name = "reference4";
    p.state_dim = 4;
    p.input_dim = 1;
    p.degrees = {4};
    p.dynamics = [](const Vec& x, const Vec& u) -> Vec {
        require_len(x, 4, "state length");
        require_len(u, 1, "input length");
        return {x[1] + x[0] * x[0], x[2], x[3], u[0]};
    };
    p.output = [](const Vec& x) -> Vec {
        require_len(x, 4, "state length");
        return {x[0]};
    };
    p.normal_map = [](const Vec& x) -> Vec {
        require_len(x, 4, "state length");
        const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
        const double lfh = x2 + x1 * x1;
        return {x1, lfh, x3 + 2.0 * x1 * lfh, x4 + 2.0 * x1 * x3 + (2.0 * x2 + 6.0 * x1 * x1) * lfh};
    };
    // L_g L_f^3 h = 1, so the decoupling gain is trivially invertible.
    p.linearizing_feedback = [](const Vec& x, const Vec& v) -> Vec {
        require_len(v, 1, "input length");
        return {-lf4h(x) + v[0]};
    };
    return p;
}

Exosystem exosystem() { return Exosystem(Mat{{0.0, 1.0}, {-1.0, 0.0}}, Mat{{1.0, 0.0}}, Vec{1.0, 0.0}); }

}  // namespace nosreg::reference
