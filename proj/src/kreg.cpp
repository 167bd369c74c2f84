// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/kreg/kreg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "streamreg/util/normal.hpp"

namespace streamreg::kreg {

using core::DataPoint;
using core::ObservedPair;
using core::PredictionTriple;
using numkit::Matrix;
using numkit::Vector;

namespace {
constexpr double kTwoPi = 6.283185307179586;
}

double gaussian_kernel(const Vector& u) {
    const double d = static_cast<double>(u.size());
    return std::pow(kTwoPi, -0.5 * d) * std::exp(-0.5 * numkit::dot(u, u));
}

double kernel_measure(const DataPoint& a, const DataPoint& b,
                      const Matrix& h_inv) {
    assert(a.size() == b.size() && a.size() == h_inv.rows());
    Vector diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return gaussian_kernel(h_inv.mul(diff));
}

Matrix var_cov(const core::SlidingWindow& window) {
    assert(window.count() >= 2);
    const std::size_t d = window.at(0).point.size();
    Matrix cov = numkit::population_covariance(
        window.count(), d,
        [&](std::size_t i) -> const Vector& { return window.at(i).point; });
    // A constant feature collapses a row/column; patch its variance so
    // the matrix stays invertible as a bandwidth shape.
    for (std::size_t i = 0; i < d; ++i)
        if (cov(i, i) < 1e-12) cov(i, i) = 1.0;
    return cov;
}

KernelRegressionLearner::KernelRegressionLearner(
    const core::LearnerConfig& config)
    : SlidingWindowLearner(config.window_size.value(), config),
      z_(util::z_for_confidence(config.high_confidence ? 0.999
                                                       : config.confidence_level)) {}

void KernelRegressionLearner::ensure_initialized(std::size_t d) {
    if (initialized_) return;
    h_inv_ = Matrix::identity(d);
    initialized_ = true;
}

double KernelRegressionLearner::window_target_mean() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < window_.count(); ++i) sum += window_.at(i).target;
    return window_.count() > 0 ? sum / static_cast<double>(window_.count()) : 0.0;
}

PredictionTriple KernelRegressionLearner::predict(const DataPoint& x) {
    if (!initialized_ || window_.empty()) return PredictionTriple::unbounded(0.0);

    const std::size_t n = window_.count();
    double mass = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const ObservedPair& pair = window_.at(i);
        const double km = kernel_measure(pair.point, x, h_inv_);
        mass += km;
        weighted += km * pair.target;
    }
    if (mass < kZeroDensity)
        return PredictionTriple::unbounded(window_target_mean());

    const double point = weighted / mass;
    const double d = static_cast<double>(x.size());
    // Density enters as the mean kernel mass at the query. Folding the
    // bandwidth determinant into it (the textbook KDE normalization)
    // makes the interval scale swing with the input units; this form
    // keeps the width proportional to the local error level, which is
    // what the coverage behavior of these bounds rests on.
    const double density = mass / static_cast<double>(n);
    const double var = std::pow(2.0 * kTwoPi, -0.5 * d) * ase_ / density;
    // A vanishing density (query far outside the window, or a badly
    // scaled pre-calibration bandwidth) says "no information"; beyond
    // the sentinel the width value carries no meaning.
    const double half_width =
        std::min(z_ * std::sqrt(std::max(0.0, var)), core::kUnboundedHalfWidth);
    return PredictionTriple::clamped(point - half_width, point,
                                     point + half_width);
}

void KernelRegressionLearner::absorb(const ObservedPair& pair,
                                     const PredictionTriple& last) {
    ensure_initialized(pair.point.size());

    const auto dropped = window_.push(pair);
    if (dropped) {
        densities_.pop_front();
        contributions_.pop_front();
        // Remaining entries lose the dropped point's terms. The new pair
        // is already stored at the last slot and has no entries yet.
        for (std::size_t i = 0; i + 1 < window_.count(); ++i) {
            const ObservedPair& stored = window_.at(i);
            const double km = kernel_measure(dropped->point, stored.point, h_inv_);
            densities_[i] -= km;
            contributions_[i] -= km * dropped->target;
        }
    }

    double new_density = 0.0;
    double new_contribution = 0.0;
    for (std::size_t i = 0; i + 1 < window_.count(); ++i) {
        const ObservedPair& stored = window_.at(i);
        const double km = kernel_measure(pair.point, stored.point, h_inv_);
        densities_[i] += km;
        contributions_[i] += km * pair.target;
        new_density += km;
        new_contribution += km * stored.target;
    }
    const double self = gaussian_kernel(Vector(pair.point.size(), 0.0));
    densities_.push_back(new_density + self);
    contributions_.push_back(new_contribution + self * pair.target);

    // Exponentially windowed mean of squared prediction errors with the
    // window capacity as horizon; plain mean until enough errors exist.
    const double err = pair.target - last.point;
    const double sq = err * err;
    ++errors_seen_;
    const double horizon =
        static_cast<double>(std::min(errors_seen_, window_.capacity()));
    ase_ += (sq - ase_) / horizon;
}

double KernelRegressionLearner::hold_out_one_estimate(
    std::size_t hold_out, const Matrix& h_inv) const {
    double mass = 0.0;
    double weighted = 0.0;
    const DataPoint& x = window_.at(hold_out).point;
    for (std::size_t i = 0; i < window_.count(); ++i) {
        if (i == hold_out) continue;
        const ObservedPair& stored = window_.at(i);
        const double km = kernel_measure(x, stored.point, h_inv);
        mass += km;
        weighted += km * stored.target;
    }
    if (mass < kZeroDensity) return window_target_mean();
    return weighted / mass;
}

double KernelRegressionLearner::hold_out_one_ase(const Matrix& h_inv) const {
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < window_.count(); ++i) {
        const double r =
            hold_out_one_estimate(i, h_inv) - window_.at(i).target;
        sum_sq += r * r;
    }
    return sum_sq / static_cast<double>(window_.count());
}

void KernelRegressionLearner::tune_bandwidth() {
    if (window_.count() < 2) return;
    const Matrix cov = var_cov(window_);

    double best_cv = std::numeric_limits<double>::infinity();
    Matrix best_h_inv;
    bool found = false;
    for (double alpha = grid_.min; alpha <= grid_.max + 1e-9;
         alpha += grid_.step) {
        Matrix scaled = cov;
        scaled.scale(alpha);
        Matrix candidate;
        try {
            candidate = numkit::invert_psd(scaled);
        } catch (const numkit::NotPositiveDefinite&) {
            continue;
        }
        const double cv = hold_out_one_ase(candidate);
        if (cv < best_cv) {
            best_cv = cv;
            best_h_inv = std::move(candidate);
            found = true;
        }
    }
    if (!found) return;  // keep the current bandwidth

    h_inv_ = std::move(best_h_inv);
    rebuild_rings();
}

void KernelRegressionLearner::rebuild_rings() {
    const std::size_t n = window_.count();
    densities_.assign(n, 0.0);
    contributions_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const ObservedPair& a = window_.at(i);
        for (std::size_t j = 0; j < n; ++j) {
            const ObservedPair& b = window_.at(j);
            const double km =
                i == j ? gaussian_kernel(Vector(a.point.size(), 0.0))
                       : kernel_measure(a.point, b.point, h_inv_);
            densities_[i] += km;
            contributions_[i] += km * b.target;
        }
    }
}

}  // namespace streamreg::kreg
