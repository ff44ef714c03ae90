#include "nosreg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "nosreg/errors.hpp"

namespace nosreg {

namespace {

constexpr double kPivotTolerance = 1e-12;

void require_finite(std::span<const double> v) {
    if (!all_finite(v)) {
        throw NonFiniteValue("numerics", "matrix entries must be finite");
    }
}

void require_same_shape(const Mat& a, const Mat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("numerics", std::string(op) + " of " + std::to_string(a.rows()) + "x" +
                                                std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                                "x" + std::to_string(b.cols()));
    }
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols, double fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (!std::isfinite(fill)) {
        throw NonFiniteValue("numerics", "matrix fill value must be finite");
    }
}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionMismatch("numerics", "entry count " + std::to_string(data_.size()) + " for " +
                                                std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    }
    require_finite(data_);
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionMismatch("numerics", "ragged matrix literal");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_);
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::column(std::span<const double> v) { return Mat(v.size(), 1, Vec(v.begin(), v.end())); }

Mat Mat::row(std::span<const double> v) { return Mat(1, v.size(), Vec(v.begin(), v.end())); }

Vec Mat::row_vec(std::size_t r) const {
    auto s = row_span(r);
    return Vec(s.begin(), s.end());
}

Vec Mat::col_vec(std::size_t c) const {
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

double Mat::max_abs() const noexcept { return nosreg::max_abs(data_); }

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& block) {
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_) {
        throw DimensionMismatch("numerics", "block does not fit");
    }
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c) (*this)(r0 + r, c0 + c) = block(r, c);
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw DimensionMismatch("numerics", "block out of range");
    }
    Mat out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("numerics", "product of " + std::to_string(a.rows()) + "x" +
                                                std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                                "x" + std::to_string(b.cols()));
    }
    Mat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

Mat operator+(const Mat& a, const Mat& b) {
    require_same_shape(a, b, "sum");
    Mat out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

Mat operator-(const Mat& a, const Mat& b) {
    require_same_shape(a, b, "difference");
    Mat out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

Mat operator*(double s, const Mat& a) {
    Mat out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
    return out;
}

Vec operator*(const Mat& a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        throw DimensionMismatch("numerics", "matrix-vector product");
    }
    Vec out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        out[i] = acc;
    }
    return out;
}

Mat lu_solve(const Mat& a, const Mat& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n) {
        throw DimensionMismatch("numerics", "lu_solve needs a square matrix");
    }
    if (b.rows() != n) {
        throw DimensionMismatch("numerics", "lu_solve right-hand side has " + std::to_string(b.rows()) +
                                                " rows, expected " + std::to_string(n));
    }
    const std::size_t k = b.cols();
    const double tol = kPivotTolerance * a.max_abs();

    Mat lu = a;
    Mat x = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu(r, col)) > best) {
                best = std::abs(lu(r, col));
                pivot_row = r;
            }
        }
        if (best <= tol) {
            throw SingularMatrix(col, best);
        }
        if (pivot_row != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu(col, c), lu(pivot_row, c));
            for (std::size_t c = 0; c < k; ++c) std::swap(x(col, c), x(pivot_row, c));
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = lu(r, col) / lu(col, col);
            if (factor == 0.0) continue;
            lu(r, col) = factor;
            for (std::size_t c = col + 1; c < n; ++c) lu(r, c) -= factor * lu(col, c);
            for (std::size_t c = 0; c < k; ++c) x(r, c) -= factor * x(col, c);
        }
    }
    // Back substitution on the upper triangle.
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t c = 0; c < k; ++c) {
            double acc = x(ii, c);
            for (std::size_t j = ii + 1; j < n; ++j) acc -= lu(ii, j) * x(j, c);
            x(ii, c) = acc / lu(ii, ii);
        }
    }
    return x;
}

Vec lu_solve(const Mat& a, std::span<const double> b) { return lu_solve(a, Mat::column(b)).col_vec(0); }

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return out;
}

Vec vectorize(const Mat& m) {
    Vec out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m(r, c));
    return out;
}

double max_abs(std::span<const double> v) noexcept {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(std::span<const double> v) noexcept {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace nosreg
