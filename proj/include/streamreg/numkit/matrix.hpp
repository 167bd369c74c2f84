// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_NUMKIT_MATRIX_HPP
#define STREAMREG_NUMKIT_MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <vector>

namespace streamreg::numkit {

/// Real-valued column vector. Plain std::vector<double> keeps the call
/// sites light; the free helpers below cover the arithmetic we need.
using Vector = std::vector<double>;

double dot(const Vector& a, const Vector& b);

/// y += s * x
void axpy(double s, const Vector& x, Vector& y);

/// Dense row-major matrix. Sized for small problems (window sizes up to
/// a few hundred), so no blocking or sparsity.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    const std::vector<double>& data() const { return data_; }

    Matrix transposed() const;
    Matrix mul(const Matrix& rhs) const;
    Vector mul(const Vector& v) const;

    /// this += s * x * x^T (x must have rows() entries; matrix square).
    void add_scaled_outer(const Vector& x, double s);

    void scale(double s);

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// max_ij |a_ij - b_ij|; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace streamreg::numkit

#endif  // STREAMREG_NUMKIT_MATRIX_HPP
