// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "streamreg/numkit/linalg.hpp"
#include "streamreg/util/rng.hpp"

using namespace streamreg;
using numkit::Matrix;
using numkit::Vector;

namespace {

Matrix random_spd(std::size_t n, util::Rng& rng, double ridge = 0.5) {
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
    Matrix a = b.mul(b.transposed());
    for (std::size_t i = 0; i < n; ++i) a(i, i) += ridge;
    return a;
}

Vector random_vector(std::size_t n, util::Rng& rng, double lo = -1.0,
                     double hi = 1.0) {
    Vector v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

// Independent inversion oracle: Gauss-Jordan elimination with partial
// pivoting, sharing no code with the Cholesky path under test.
Matrix gauss_jordan_inverse(Matrix a) {
    const std::size_t n = a.rows();
    Matrix inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        REQUIRE(std::abs(a(pivot, col)) > 1e-14);
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const double scale = 1.0 / a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) *= scale;
            inv(col, c) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = a(r, col);
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= factor * a(col, c);
                inv(r, c) -= factor * inv(col, c);
            }
        }
    }
    return inv;
}

double rel_frobenius_error(const Matrix& got, const Matrix& want) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < got.rows(); ++i)
        for (std::size_t j = 0; j < got.cols(); ++j) {
            const double d = got(i, j) - want(i, j);
            num += d * d;
            den += want(i, j) * want(i, j);
        }
    return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace

TEST_CASE("cholesky of identity is identity") {
    const Matrix l = numkit::cholesky_lower(Matrix::identity(3));
    CHECK(numkit::max_abs_diff(l, Matrix::identity(3)) == 0.0);
}

TEST_CASE("cholesky of a diagonal matrix takes square roots") {
    Matrix m(2, 2);
    m(0, 0) = 4.0;
    m(1, 1) = 9.0;
    const Matrix l = numkit::cholesky_lower(m);
    CHECK(l(0, 0) == doctest::Approx(2.0));
    CHECK(l(1, 1) == doctest::Approx(3.0));
    CHECK(l(0, 1) == 0.0);
    CHECK(l(1, 0) == 0.0);
}

TEST_CASE("cholesky reconstructs random SPD matrices") {
    util::Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_spd(5, rng);
        const Matrix l = numkit::cholesky_lower(a);
        CHECK(rel_frobenius_error(l.mul(l.transposed()), a) < 1e-10);
        // strict upper triangle exactly zero
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j) CHECK(l(i, j) == 0.0);
    }
}

TEST_CASE("cholesky rejects non-positive-definite input") {
    Matrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 2.0;
    m(1, 0) = 2.0;
    m(1, 1) = 1.0;  // eigenvalues 3, -1
    CHECK_THROWS_AS(numkit::cholesky_lower(m), numkit::NotPositiveDefinite);
}

TEST_CASE("invert_psd on identity and diagonal") {
    CHECK(numkit::max_abs_diff(numkit::invert_psd(Matrix::identity(4)),
                               Matrix::identity(4)) < 1e-15);
    Matrix m(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 4.0;
    const Matrix inv = numkit::invert_psd(m);
    CHECK(inv(0, 0) == doctest::Approx(0.5));
    CHECK(inv(1, 1) == doctest::Approx(0.25));
}

TEST_CASE("invert_psd matches the Gauss-Jordan oracle on random SPD") {
    util::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = random_spd(6, rng);
        const Matrix got = numkit::invert_psd(a);
        const Matrix want = gauss_jordan_inverse(a);
        CHECK(rel_frobenius_error(got, want) < 1e-8);
        CHECK(rel_frobenius_error(a.mul(got), Matrix::identity(6)) < 1e-8);
        CHECK(rel_frobenius_error(got.mul(a), Matrix::identity(6)) < 1e-8);
    }
}

TEST_CASE("rank1 update: (I + e1 e1^T)^-1") {
    const Matrix got =
        numkit::rank1_update_inverse(Matrix::identity(2), {1.0, 0.0});
    CHECK(got(0, 0) == doctest::Approx(0.5));
    CHECK(got(1, 1) == doctest::Approx(1.0));
    CHECK(got(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("rank1 update with a zero vector is a no-op") {
    const Matrix got =
        numkit::rank1_update_inverse(Matrix::identity(2), {0.0, 0.0});
    CHECK(numkit::max_abs_diff(got, Matrix::identity(2)) == 0.0);
}

TEST_CASE("rank1 update matches direct inversion of A + x x^T") {
    util::Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_spd(4, rng);
        const Vector x = random_vector(4, rng);
        const Matrix a_inv = numkit::invert_psd(a);
        const Matrix got = numkit::rank1_update_inverse(a_inv, x);
        Matrix updated = a;
        updated.add_scaled_outer(x, 1.0);
        CHECK(rel_frobenius_error(got, numkit::invert_psd(updated)) < 1e-8);
    }
}

TEST_CASE("rank1 downdate undoes the matching update") {
    const Matrix after =
        numkit::rank1_downdate_inverse(
            numkit::rank1_update_inverse(Matrix::identity(2), {1.0, 0.0}),
            {1.0, 0.0});
    CHECK(numkit::max_abs_diff(after, Matrix::identity(2)) < 1e-12);
}

TEST_CASE("rank1 downdate matches direct inversion of B = A - x x^T") {
    util::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix b = random_spd(4, rng);
        const Vector x = random_vector(4, rng);
        Matrix a = b;
        a.add_scaled_outer(x, 1.0);  // A = B + x x^T
        const Matrix got =
            numkit::rank1_downdate_inverse(numkit::invert_psd(a), x);
        CHECK(rel_frobenius_error(got, numkit::invert_psd(b)) < 1e-8);
    }
}

TEST_CASE("property: update-then-downdate round trip") {
    util::Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const Matrix a_inv = numkit::invert_psd(random_spd(n, rng));
        const Vector x = random_vector(n, rng);
        const Matrix round =
            numkit::rank1_downdate_inverse(numkit::rank1_update_inverse(a_inv, x),
                                           x);
        CHECK(rel_frobenius_error(round, a_inv) < 1e-8);
    }
}

TEST_CASE("rank1 ops reject singular denominators") {
    // A = I, x = e1 makes 1 - x^T A^-1 x exactly zero.
    CHECK_THROWS_AS(
        numkit::rank1_downdate_inverse(Matrix::identity(2), {1.0, 0.0}),
        numkit::SingularUpdate);
}

TEST_CASE("population covariance of two scalar points") {
    const std::vector<Vector> pts{{1.0}, {3.0}};
    const Matrix cov = numkit::population_covariance(
        2, 1, [&](std::size_t i) -> const Vector& { return pts[i]; });
    CHECK(cov(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("log_det_psd matches direct determinant on diagonal input") {
    Matrix m(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = 3.0;
    m(2, 2) = 4.0;
    CHECK(numkit::log_det_psd(m) == doctest::Approx(std::log(24.0)));
}
