#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nosreg/numerics.hpp"

namespace nosreg {

// Distinct, strictly increasing, negative real closed-loop poles
// (lambda_1 < lambda_2 < ... < lambda_n < 0).
class PoleSet {
public:
    static constexpr double kDefaultSeparation = 1e-6;

    explicit PoleSet(std::vector<double> lambdas, double sep_min = kDefaultSeparation);

    std::size_t size() const noexcept { return lambdas_.size(); }
    double operator[](std::size_t i) const { return lambdas_[i]; }
    const std::vector<double>& values() const noexcept { return lambdas_; }

    // Coefficients (a_0, ..., a_{n-1}) of the monic polynomial
    // prod (s - lambda_i) = s^n + a_{n-1} s^{n-1} + ... + a_0.
    std::vector<double> characteristic_coefficients() const;

    friend bool operator==(const PoleSet&, const PoleSet&) = default;

private:
    std::vector<double> lambdas_;
};

struct RosenbrockSolution {
    Vec v;     // eigenvector (1, lambda, ..., lambda^{n-1})
    double w;  // input direction lambda^n
};

// Closed-form solution of the Rosenbrock system
//   [A - lambda I  B] [v]   [0]
//   [C            0] [w] = [1]
// for the order-n chain of integrators.
RosenbrockSolution rosenbrock_closed_form(double lambda, std::size_t n);

struct MooreFeedback {
    Mat F;  // 1 x n
    Mat V;  // n x n, columns are the closed-loop eigenvectors
    Mat W;  // 1 x n
};

// F = W V^{-1}; A + B F then has eigenvalues `poles` with eigenvectors the
// columns of V. Throws SingularMatrix when V is numerically singular.
MooreFeedback moore_feedback(const PoleSet& poles, std::size_t n);

struct ModalDecomposition {
    PoleSet poles;
    Mat V;
    Mat W;
    Vec alpha;  // V alpha = x0
    Vec x0;
};

ModalDecomposition modal_coeffs(const PoleSet& poles, std::span<const double> x0);

// sum_i alpha_i exp(lambda_i t), the output of x' = (A + B F) x from x0.
double natural_response(const ModalDecomposition& decomp, double t);

}  // namespace nosreg
