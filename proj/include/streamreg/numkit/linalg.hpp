// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_NUMKIT_LINALG_HPP
#define STREAMREG_NUMKIT_LINALG_HPP

#include <functional>
#include <stdexcept>

#include "streamreg/numkit/matrix.hpp"

namespace streamreg::numkit {

/// Thrown when a Cholesky pivot is non-positive. Usually signals a
/// degenerate window (e.g. duplicated points without a noise term).
struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& what)
        : std::runtime_error(what) {}
};

/// Thrown when a rank-1 update/downdate denominator is numerically zero.
struct SingularUpdate : std::runtime_error {
    explicit SingularUpdate(const std::string& what)
        : std::runtime_error(what) {}
};

/// Tolerance below which a rank-1 denominator counts as singular.
inline constexpr double kSingularDenominator = 1e-12;

/// Cholesky factor L with m == L * L^T. The strict upper triangle of the
/// result is exactly zero. Throws NotPositiveDefinite on a pivot <= 0.
Matrix cholesky_lower(const Matrix& m);

/// Inverse of a lower-triangular matrix by forward substitution.
Matrix invert_lower_triangular(const Matrix& l);

/// Inverse of a symmetric positive-definite matrix via Cholesky,
/// triangular inversion and the product (L^-1)^T * L^-1.
Matrix invert_psd(const Matrix& m);

/// log det(m) for symmetric positive-definite m, computed as
/// 2 * sum_i log L_ii from the Cholesky factor.
double log_det_psd(const Matrix& m);

/// Given a_inv = A^-1, returns (A + x x^T)^-1 using
///   A^-1 - (A^-1 x x^T A^-1) / (1 + x^T A^-1 x).
/// Throws SingularUpdate when the denominator magnitude is below
/// kSingularDenominator.
Matrix rank1_update_inverse(const Matrix& a_inv, const Vector& x);

/// Given a_inv = A^-1, returns (A - x x^T)^-1 using
///   A^-1 + (A^-1 x x^T A^-1) / (1 - x^T A^-1 x).
Matrix rank1_downdate_inverse(const Matrix& a_inv, const Vector& x);

/// Population covariance (normalized by n) of a set of equally sized
/// vectors, accessed through a subscript callback to avoid copies.
Matrix population_covariance(std::size_t count, std::size_t dim,
                             const std::function<const Vector&(std::size_t)>& at);

}  // namespace streamreg::numkit

#endif  // STREAMREG_NUMKIT_LINALG_HPP
