// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/numkit/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace streamreg::numkit {

double dot(const Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double s, const Vector& x, Vector& y) {
    assert(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::mul(const Matrix& rhs) const {
    assert(cols_ == rhs.rows_);
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

Vector Matrix::mul(const Vector& v) const {
    assert(cols_ == v.size());
    Vector out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

void Matrix::add_scaled_outer(const Vector& x, double s) {
    assert(rows_ == cols_ && rows_ == x.size());
    for (std::size_t i = 0; i < rows_; ++i) {
        const double sxi = s * x[i];
        if (sxi == 0.0) continue;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += sxi * x[j];
    }
}

void Matrix::scale(double s) {
    for (double& v : data_) v *= s;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    assert(a.same_shape(b));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

}  // namespace streamreg::numkit
