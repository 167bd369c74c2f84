// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/numkit/linalg.hpp"

#include <cmath>
#include <string>

namespace streamreg::numkit {

Matrix cholesky_lower(const Matrix& m) {
    assert(m.rows() == m.cols());
    const std::size_t n = m.rows();
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0)
                    throw NotPositiveDefinite(
                        "cholesky pivot " + std::to_string(i) +
                        " is non-positive (" + std::to_string(s) + ")");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

Matrix invert_lower_triangular(const Matrix& l) {
    const std::size_t n = l.rows();
    Matrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        inv(j, j) = 1.0 / l(j, j);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = j; k < i; ++k) s += l(i, k) * inv(k, j);
            inv(i, j) = -s / l(i, i);
        }
    }
    return inv;
}

Matrix invert_psd(const Matrix& m) {
    const Matrix linv = invert_lower_triangular(cholesky_lower(m));
    // m^-1 = (L^-1)^T * L^-1, computed directly from the triangular shape.
    const std::size_t n = m.rows();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t k = i; k < n; ++k) s += linv(k, i) * linv(k, j);
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return out;
}

double log_det_psd(const Matrix& m) {
    const Matrix l = cholesky_lower(m);
    double s = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
    return 2.0 * s;
}

namespace {

Matrix rank1_correction(const Matrix& a_inv, const Vector& x, double sign,
                        const char* label) {
    assert(a_inv.rows() == a_inv.cols() && a_inv.rows() == x.size());
    const Vector u = a_inv.mul(x);
    const double denom = 1.0 + sign * dot(x, u);
    if (std::abs(denom) < kSingularDenominator)
        throw SingularUpdate(std::string(label) + ": denominator " +
                             std::to_string(denom));
    Matrix out = a_inv;
    out.add_scaled_outer(u, -sign / denom);
    return out;
}

}  // namespace

Matrix rank1_update_inverse(const Matrix& a_inv, const Vector& x) {
    return rank1_correction(a_inv, x, +1.0, "rank1_update_inverse");
}

Matrix rank1_downdate_inverse(const Matrix& a_inv, const Vector& x) {
    return rank1_correction(a_inv, x, -1.0, "rank1_downdate_inverse");
}

Matrix population_covariance(std::size_t count, std::size_t dim,
                             const std::function<const Vector&(std::size_t)>& at) {
    assert(count > 0);
    Vector mean(dim, 0.0);
    for (std::size_t i = 0; i < count; ++i) axpy(1.0, at(i), mean);
    for (double& v : mean) v /= static_cast<double>(count);

    Matrix cov(dim, dim);
    Vector centered(dim);
    for (std::size_t i = 0; i < count; ++i) {
        const Vector& x = at(i);
        for (std::size_t k = 0; k < dim; ++k) centered[k] = x[k] - mean[k];
        cov.add_scaled_outer(centered, 1.0 / static_cast<double>(count));
    }
    return cov;
}

}  // namespace streamreg::numkit
