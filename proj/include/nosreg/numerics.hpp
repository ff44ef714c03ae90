#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nosreg {

using Vec = std::vector<double>;

// Dense row-major real matrix. Entries are finite at construction; problem
// sizes in this library are small (tens of rows at most), so there is no
// sparse or blocked path.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0);
    Mat(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Mat(std::initializer_list<std::initializer_list<double>> rows);

    static Mat identity(std::size_t n);
    static Mat column(std::span<const double> v);
    static Mat row(std::span<const double> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> row_span(std::size_t r) const {
        return std::span<const double>(data_).subspan(r * cols_, cols_);
    }
    Vec row_vec(std::size_t r) const;
    Vec col_vec(std::size_t c) const;

    Mat transpose() const;
    double max_abs() const noexcept;

    // Copy `block` into this matrix with its top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const Mat& block);
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);
Vec operator*(const Mat& a, std::span<const double> x);

// Solves A X = B by LU factorization with partial pivoting. Throws
// SingularMatrix when a pivot falls below 1e-12 times the largest absolute
// entry of A.
Mat lu_solve(const Mat& a, const Mat& b);
Vec lu_solve(const Mat& a, std::span<const double> b);

Mat kron(const Mat& a, const Mat& b);

// Stacks the columns of M into a single vector (column-major vectorization).
Vec vectorize(const Mat& m);

double max_abs(std::span<const double> v) noexcept;
bool all_finite(std::span<const double> v) noexcept;

}  // namespace nosreg
