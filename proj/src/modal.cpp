#include "nosreg/modal.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "nosreg/errors.hpp"

namespace nosreg {

PoleSet::PoleSet(std::vector<double> lambdas, double sep_min) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) {
        throw InvalidPoles("empty");
    }
    if (!(sep_min >= 0.0)) {
        throw InvalidPoles("minimum separation must be nonnegative");
    }
    for (std::size_t i = 0; i < lambdas_.size(); ++i) {
        const double l = lambdas_[i];
        if (!std::isfinite(l)) {
            throw InvalidPoles("pole " + std::to_string(i) + " is not finite");
        }
        if (!(l < 0.0)) {
            throw InvalidPoles("pole " + std::to_string(i) + " = " + std::to_string(l) + " is not negative");
        }
        if (i > 0) {
            if (!(lambdas_[i - 1] < l)) {
                throw InvalidPoles("poles must be strictly increasing (index " + std::to_string(i) + ")");
            }
            if (l - lambdas_[i - 1] < sep_min) {
                throw InvalidPoles("poles " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                   " closer than " + std::to_string(sep_min));
            }
        }
    }
}

std::vector<double> PoleSet::characteristic_coefficients() const {
    // Multiply out prod (s - lambda_i), lowest degree first.
    std::vector<double> poly{1.0};
    for (double l : lambdas_) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= l * poly[k];
        }
        poly = std::move(next);
    }
    poly.pop_back();  // monic leading term
    return poly;
}

RosenbrockSolution rosenbrock_closed_form(double lambda, std::size_t n) {
    if (!std::isfinite(lambda)) {
        throw InvalidArgument("modal", "Rosenbrock eigenvalue must be finite");
    }
    if (n == 0) {
        throw InvalidOrder("Rosenbrock order must be at least 1");
    }
    RosenbrockSolution sol;
    sol.v.resize(n);
    double power = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        sol.v[k] = power;
        power *= lambda;
    }
    sol.w = power;
    return sol;
}

namespace {

Mat eigenvector_matrix(const PoleSet& poles, std::size_t n, Mat* W) {
    Mat V(n, n);
    if (W) *W = Mat(1, n);
    for (std::size_t i = 0; i < n; ++i) {
        const RosenbrockSolution sol = rosenbrock_closed_form(poles[i], n);
        for (std::size_t k = 0; k < n; ++k) V(k, i) = sol.v[k];
        if (W) (*W)(0, i) = sol.w;
    }
    return V;
}

void require_size(const PoleSet& poles, std::size_t n) {
    if (poles.size() != n) {
        throw DimensionMismatch("modal", std::to_string(poles.size()) + " poles for a chain of order " +
                                             std::to_string(n));
    }
}

}  // namespace

MooreFeedback moore_feedback(const PoleSet& poles, std::size_t n) {
    require_size(poles, n);
    MooreFeedback out;
    out.V = eigenvector_matrix(poles, n, &out.W);
    // F V = W  <=>  V^T F^T = W^T
    out.F = lu_solve(out.V.transpose(), out.W.transpose()).transpose();
    return out;
}

ModalDecomposition modal_coeffs(const PoleSet& poles, std::span<const double> x0) {
    const std::size_t n = x0.size();
    require_size(poles, n);
    if (!all_finite(x0)) {
        throw NonFiniteValue("modal", "initial condition");
    }
    Mat W;
    Mat V = eigenvector_matrix(poles, n, &W);
    Vec alpha = lu_solve(V, x0);
    return ModalDecomposition{poles, std::move(V), std::move(W), std::move(alpha), Vec(x0.begin(), x0.end())};
}

double natural_response(const ModalDecomposition& decomp, double t) {
    if (!(t >= 0.0)) {
        throw InvalidArgument("modal", "natural response is defined for t >= 0");
    }
    double y = 0.0;
    for (std::size_t i = 0; i < decomp.alpha.size(); ++i) y += decomp.alpha[i] * std::exp(decomp.poles[i] * t);
    return y;
}

}  // namespace nosreg
