#include "nosreg/noscert.hpp"

#include <cmath>
#include <string>

#include "nosreg/errors.hpp"

namespace nosreg {

namespace {

constexpr double kZeroFraction = 1e-12;

void require_order(std::span<const double> x0, const PoleSet& poles, std::size_t n) {
    if (x0.size() != n || poles.size() != n) {
        throw DimensionMismatch("noscert", "expected order " + std::to_string(n) + " data, got x0 of length " +
                                               std::to_string(x0.size()) + " and " +
                                               std::to_string(poles.size()) + " poles");
    }
}

}  // namespace

Certificate certify(std::span<const double> alpha) {
    const std::size_t n = alpha.size();
    if (n == 0) {
        throw InvalidArgument("noscert", "empty modal coefficient vector");
    }
    Certificate cert;
    cert.alpha.assign(alpha.begin(), alpha.end());
    cert.c.assign(n - 1, 0);

    const double scale = max_abs(alpha);
    if (scale == 0.0) {
        cert.zero_response = true;
        cert.passed = true;
        return cert;
    }
    const double tol = kZeroFraction * scale;
    std::size_t m = n - 1;
    while (std::abs(alpha[m]) <= tol) --m;  // terminates: some entry exceeds tol
    cert.anchor = m;

    const bool anchor_positive = alpha[m] > 0.0;
    double p = std::abs(alpha[m]);
    for (std::size_t k = 0; k < m; ++k) {
        const bool nonzero = std::abs(alpha[k]) > tol;
        cert.c[k] = (nonzero && ((alpha[k] > 0.0) != anchor_positive)) ? 1 : 0;
        p -= cert.c[k] * std::abs(alpha[k]);
    }
    if (m > 0) p += (1 - cert.c[m - 1]) * std::abs(alpha[m - 1]);

    cert.p_value = p;
    cert.passed = p > 0.0;
    return cert;
}

Certificate certify(const ModalDecomposition& decomp) { return certify(decomp.alpha); }

QuadrantCertificate certify_n2(std::span<const double> x0, const PoleSet& poles) {
    require_order(x0, poles, 2);
    const double l1 = poles[0];
    const double d = poles[1] - l1;
    QuadrantCertificate out;
    out.q_value = (x0[0] * x0[1] - l1 * x0[0] * x0[0]) / d;
    out.passed = out.q_value > 0.0 || (x0[0] == 0.0 && x0[1] == 0.0);
    return out;
}

ThirdOrderClosedForm certify_n3_closedform(std::span<const double> x0, const PoleSet& poles) {
    require_order(x0, poles, 3);
    const double l1 = poles[0], l2 = poles[1], l3 = poles[2];
    const double x01 = x0[0], x02 = x0[1], x03 = x0[2];

    ThirdOrderClosedForm out;
    out.f1 = x03 - (l1 + l2) * x02 + l1 * l2 * x01;
    out.f2 = x03 - (l2 + l3) * x02 + l2 * l3 * x01;
    out.f3 = x03 - (l1 + l3) * x02 + l1 * l3 * x01;

    // Inverse Vandermonde rows; every denominator below is a product of
    // pole gaps with known sign.
    out.alpha = {out.f2 / ((l1 - l2) * (l1 - l3)), out.f3 / ((l2 - l1) * (l2 - l3)),
                 out.f1 / ((l3 - l1) * (l3 - l2))};

    // alpha_1 alpha_3 has the sign of f1 f2, alpha_2 alpha_3 the sign of -f1 f3.
    out.c1 = (out.f1 * out.f2 < 0.0) ? 1 : 0;
    out.c2 = (out.f1 * out.f3 > 0.0) ? 1 : 0;

    out.p_value = std::abs(out.f1) / ((l1 - l3) * (l2 - l3)) -
                  std::abs(out.f3) * (2 * out.c2 - 1) / ((l1 - l2) * (l2 - l3)) -
                  out.c1 * std::abs(out.f2) / ((l1 - l2) * (l1 - l3));
    return out;
}

}  // namespace nosreg
