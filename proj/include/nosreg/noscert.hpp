#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nosreg/modal.hpp"
#include "nosreg/numerics.hpp"

namespace nosreg {

// Sufficient test that the modal response sum_i alpha_i exp(lambda_i t)
// keeps one sign for t >= 0.
//
// With lambda_1 < ... < lambda_n, the slowest mode alpha_n dominates for
// large t. c_k flags modes whose sign opposes alpha_n, and
//
//   p = |alpha_n| + (1 - c_{n-1}) |alpha_{n-1}| - sum_{k<n} c_k |alpha_k|
//
// is positive only when the opposing modes cannot outweigh the dominant
// ones at any t >= 0 (they decay at least as fast as exp(lambda_{n-1} t)).
//
// Components with |alpha_k| <= 1e-12 |alpha|_inf count as zero. When the
// trailing coefficients vanish, the last nonzero coefficient takes the role
// of alpha_n; otherwise a zero alpha_n would make every c_k zero and pass
// mixtures that do cross zero.
struct Certificate {
    Vec alpha;
    std::vector<int> c;     // length n - 1, entries 0 or 1
    double p_value = 0.0;
    std::size_t anchor = 0;  // index of the dominant (last nonzero) mode
    bool zero_response = false;
    bool passed = false;
};

Certificate certify(const ModalDecomposition& decomp);
Certificate certify(std::span<const double> alpha);

// Second-order refinement: q = (x01 x02 - lambda_1 x01^2) / (lambda_2 - lambda_1).
// q > 0 means alpha_2 has the sign of y(0) = alpha_1 + alpha_2, which rules out
// a crossing. In the second and fourth quadrants this reduces to
// lambda_1 < x02 / x01.
struct QuadrantCertificate {
    double q_value = 0.0;
    bool passed = false;
};

QuadrantCertificate certify_n2(std::span<const double> x0, const PoleSet& poles);

// Third-order closed form of the general certificate, written through
//   f1 = x03 - (l1 + l2) x02 + l1 l2 x01   (numerator of alpha_3)
//   f2 = x03 - (l2 + l3) x02 + l2 l3 x01   (numerator of alpha_1)
//   f3 = x03 - (l1 + l3) x02 + l1 l3 x01   (numerator of alpha_2)
// Used as an independent cross-check of the numeric path.
struct ThirdOrderClosedForm {
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    Vec alpha;
    int c1 = 0;
    int c2 = 0;
    double p_value = 0.0;
};

ThirdOrderClosedForm certify_n3_closedform(std::span<const double> x0, const PoleSet& poles);

}  // namespace nosreg
