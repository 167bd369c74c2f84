// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/parametric/recursive_ls.hpp"

#include <cmath>
#include <limits>

namespace streamreg::parametric {

using numkit::Matrix;
using numkit::Vector;

ParamState ParamState::with_gain(std::size_t p, double gain) {
    ParamState state;
    state.p = p;
    state.m1 = Matrix::identity(p);
    state.m1.scale(gain);
    state.m2.assign(p, 0.0);
    state.w.assign(p, 0.0);
    return state;
}

ParamState ParamState::from_regularizer(const Matrix& regularizer) {
    ParamState state;
    state.p = regularizer.rows();
    try {
        state.m1 = numkit::invert_psd(regularizer);
    } catch (const numkit::NotPositiveDefinite&) {
        state.m1 = Matrix::identity(state.p);
    }
    state.m2.assign(state.p, 0.0);
    state.w.assign(state.p, 0.0);
    return state;
}

void forgetting_update(ParamState& state, const Vector& x, double y,
                       double alpha) {
    state.m1 = numkit::rank1_update_inverse(state.m1, x);
    if (alpha > 0.0) state.m1.scale(1.0 / (1.0 - alpha));
    const double residual = y - numkit::dot(state.w, x);
    numkit::axpy(residual, state.m1.mul(x), state.w);
    ++state.n_seen;
}

void windowed_absorb(ParamState& state, const Vector& x, double y) {
    state.m1 = numkit::rank1_update_inverse(state.m1, x);
    numkit::axpy(y, x, state.m2);
    state.w = state.m1.mul(state.m2);
    ++state.n_seen;
}

void windowed_remove(ParamState& state, const Vector& x, double y) {
    state.m1 = numkit::rank1_downdate_inverse(state.m1, x);
    numkit::axpy(-y, x, state.m2);
    state.w = state.m1.mul(state.m2);
}

void windowed_recompute(
    ParamState& state, const Matrix& regularizer, std::size_t count,
    const std::function<std::pair<Vector, double>(std::size_t)>& at) {
    Matrix gram = regularizer;
    Vector m2(state.p, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        const auto [x, y] = at(i);
        gram.add_scaled_outer(x, 1.0);
        numkit::axpy(y, x, m2);
    }
    state.m1 = numkit::invert_psd(gram);
    state.m2 = std::move(m2);
    state.w = state.m1.mul(state.m2);
}

double residual_s2(
    const core::SlidingWindow& window, const Vector& w, std::size_t p,
    const std::function<Vector(const core::DataPoint&)>& project) {
    const std::size_t n = window.count();
    if (n <= p)
        throw InsufficientData("residual_s2 needs more points than predictors");
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const core::ObservedPair& pair = window.at(i);
        const double r = pair.target - numkit::dot(w, project(pair.point));
        sum_sq += r * r;
    }
    return sum_sq / static_cast<double>(n - p);
}

core::PredictionTriple asymptotic_bounds(const Vector& x,
                                         const ParamState& state, double z) {
    const double point = state.predict(x);
    const double leverage = numkit::dot(x, state.m1.mul(x));
    const double half_width =
        z * std::sqrt(std::max(0.0, state.s2 * leverage + state.s2));
    return core::PredictionTriple::clamped(point - half_width, point,
                                           point + half_width);
}

core::PredictionTriple ensemble_predict(const EnsembleState& ensemble,
                                        const Vector& x) {
    const double point = ensemble.base.predict(x);
    const double upper = ensemble.upper.predict(x);
    const double lower = ensemble.lower.predict(x);
    return core::PredictionTriple::clamped(lower, point, upper);
}

void ensemble_update(EnsembleState& ensemble, const Vector& x, double y,
                     const core::PredictionTriple& last, double alpha) {
    forgetting_update(ensemble.base, x, y, alpha);
    if (ensemble.burn_in_remaining > 0) {
        --ensemble.burn_in_remaining;
        forgetting_update(ensemble.upper, x, y, alpha);
        forgetting_update(ensemble.lower, x, y, alpha);
        return;
    }
    if (y > last.lower) forgetting_update(ensemble.upper, x, y, alpha);
    if (y < last.upper) forgetting_update(ensemble.lower, x, y, alpha);
}

MapPrior tune_map_prior(
    const core::SlidingWindow& window,
    const std::function<Vector(const core::DataPoint&)>& project,
    const SigmaGrid& grid) {
    const std::size_t n = window.count();
    std::vector<Vector> mapped(n);
    for (std::size_t i = 0; i < n; ++i) mapped[i] = project(window.at(i).point);
    const std::size_t p = mapped.front().size();

    Matrix sigma_w = numkit::population_covariance(
        n, p, [&](std::size_t i) -> const Vector& { return mapped[i]; });
    Matrix sigma_w_inv;
    try {
        sigma_w_inv = numkit::invert_psd(sigma_w);
    } catch (const numkit::NotPositiveDefinite&) {
        sigma_w_inv = Matrix::identity(p);
    }

    Matrix gram_base(p, p);
    Vector xy(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        gram_base.add_scaled_outer(mapped[i], 1.0);
        numkit::axpy(window.at(i).target, mapped[i], xy);
    }

    double best_sigma = grid.min;
    double best_sse = std::numeric_limits<double>::infinity();
    for (double sigma = grid.min; sigma <= grid.max + 1e-9; sigma += grid.step) {
        Matrix reg = sigma_w_inv;
        reg.scale(sigma * sigma);
        Matrix gram = gram_base;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) gram(i, j) += reg(i, j);
        Vector w;
        try {
            w = numkit::invert_psd(gram).mul(xy);
        } catch (const numkit::NotPositiveDefinite&) {
            continue;
        }
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = window.at(i).target - numkit::dot(w, mapped[i]);
            sse += r * r;
        }
        if (sse < best_sse) {
            best_sse = sse;
            best_sigma = sigma;
        }
    }

    MapPrior prior;
    prior.sigma_y = best_sigma;
    prior.sigma_w_inv_scaled = sigma_w_inv;
    prior.sigma_w_inv_scaled.scale(best_sigma * best_sigma);
    return prior;
}

}  // namespace streamreg::parametric
