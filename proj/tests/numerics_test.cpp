#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "nosreg/errors.hpp"
#include "nosreg/numerics.hpp"

using namespace nosreg;

TEST_CASE("lu_solve: identity returns the right-hand side") {
    const Mat b{{1.5, -2.0}, {3.0, 0.25}, {-7.0, 4.0}};
    CHECK(lu_solve(Mat::identity(3), b) == b);
}

TEST_CASE("lu_solve: diagonal system") {
    const Mat x = lu_solve(Mat{{2.0, 0.0}, {0.0, 4.0}}, Mat{{2.0}, {8.0}});
    CHECK(x(0, 0) == doctest::Approx(1.0));
    CHECK(x(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("lu_solve: Vandermonde system of the reference design") {
    const double poles[] = {-4.847, -4.017, -2.432, -0.1032};
    Mat v(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) v(k, i) = std::pow(poles[i], static_cast<double>(k));
    const Vec alpha = lu_solve(v, Vec{-1.0, 2.0, -4.0, 4.0});
    const double expected[] = {0.2468, -0.3236, -0.7734, -0.1499};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(alpha[i] - expected[i]) <= 5e-4);
}

TEST_CASE("lu_solve: pivoting handles a zero leading entry") {
    const Vec x = lu_solve(Mat{{0.0, 1.0}, {1.0, 0.0}}, Vec{3.0, 5.0});
    CHECK(x[0] == doctest::Approx(5.0));
    CHECK(x[1] == doctest::Approx(3.0));
}

TEST_CASE("lu_solve: singular matrix reports the pivot index") {
    try {
        lu_solve(Mat{{1.0, 2.0}, {2.0, 4.0}}, Vec{1.0, 1.0});
        FAIL("expected SingularMatrix");
    } catch (const SingularMatrix& e) {
        CHECK(e.pivot_index() == 1);
        CHECK(e.category() == ErrorCategory::Synthesis);
    }
    CHECK_THROWS_AS(lu_solve(Mat(3, 3), Vec{1.0, 2.0, 3.0}), SingularMatrix);
    // Relative threshold: a tiny but well-scaled matrix is fine.
    CHECK_NOTHROW(lu_solve(Mat{{1e-20, 0.0}, {0.0, 1e-20}}, Vec{1.0, 1.0}));
    CHECK_THROWS_AS(lu_solve(Mat{{1.0, 0.0}, {0.0, 1e-13}}, Vec{1.0, 1.0}), SingularMatrix);
}

TEST_CASE("lu_solve: shape errors") {
    CHECK_THROWS_AS(lu_solve(Mat(2, 3), Mat(2, 1)), DimensionMismatch);
    CHECK_THROWS_AS(lu_solve(Mat::identity(2), Mat(3, 1)), DimensionMismatch);
}

TEST_CASE("lu_solve: recovers X from A X for random well-conditioned A") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 12;
        const std::size_t k = 1 + trial % 3;
        Mat a(n, n), x(n, k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
            a(i, i) += static_cast<double>(n);  // diagonally dominant keeps the condition number small
            for (std::size_t j = 0; j < k; ++j) x(i, j) = 10.0 * u(rng);
        }
        const Mat back = lu_solve(a, a * x);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) err = std::max(err, std::abs(back(i, j) - x(i, j)));
        CHECK(err <= 1e-8 * x.max_abs());
    }
}

TEST_CASE("kron: identity factor gives a block diagonal") {
    const Mat m{{1.0, 2.0}, {3.0, 4.0}};
    const Mat k = kron(Mat::identity(2), m);
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 4);
    CHECK(k.block(0, 0, 2, 2) == m);
    CHECK(k.block(2, 2, 2, 2) == m);
    CHECK(k.block(0, 2, 2, 2) == Mat(2, 2));
    CHECK(k.block(2, 0, 2, 2) == Mat(2, 2));
}

TEST_CASE("kron: scalar and outer-product structure") {
    const Mat rot{{0.0, 1.0}, {-1.0, 0.0}};
    CHECK(kron(rot, Mat{{1.0}}) == rot);
    CHECK(kron(Mat{{1.0}, {2.0}}, Mat{{3.0, 4.0}}) == Mat{{3.0, 4.0}, {6.0, 8.0}});
}

TEST_CASE("kron: associativity of shapes") {
    const Mat a(2, 3), b(4, 1), c(1, 5);
    const Mat left = kron(kron(a, b), c);
    const Mat right = kron(a, kron(b, c));
    CHECK(left.rows() == right.rows());
    CHECK(left.cols() == right.cols());
    CHECK(left.rows() == 8);
    CHECK(left.cols() == 15);
}

TEST_CASE("Mat rejects non-finite entries and ragged literals") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Mat(1, 2, Vec{1.0, nan}), NonFiniteValue);
    CHECK_THROWS_AS(Mat(2, 2, std::numeric_limits<double>::infinity()), NonFiniteValue);
    CHECK_THROWS_AS(Mat(2, 2, Vec{1.0, 2.0, 3.0}), DimensionMismatch);
    CHECK_THROWS_AS((Mat{{1.0, 2.0}, {3.0}}), DimensionMismatch);
}

TEST_CASE("vectorize stacks columns") {
    const Vec v = vectorize(Mat{{1.0, 2.0}, {3.0, 4.0}});
    CHECK(v == Vec{1.0, 3.0, 2.0, 4.0});
}
