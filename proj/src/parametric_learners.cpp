// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/parametric/learners.hpp"

#include <cmath>

#include "streamreg/parametric/feature_map.hpp"
#include "streamreg/util/normal.hpp"

namespace streamreg::parametric {

using core::DataPoint;
using core::LearnOutcome;
using core::ObservedPair;
using core::Phase;
using core::PredictionTriple;
using numkit::Matrix;
using numkit::Vector;

// ---------------------------------------------------------------------------
// ForgettingLinearLearner

ForgettingLinearLearner::ForgettingLinearLearner(
    Estimator estimator, const core::LearnerConfig& config)
    : estimator_(estimator),
      alpha_(config.forgetting_factor.value_or(0.0)),
      mapping_(config.feature_mapping),
      burn_in_(config.ensemble_burn_in) {}

Vector ForgettingLinearLearner::project(const DataPoint& x) const {
    return mapping_ ? map_features(x) : x;
}

void ForgettingLinearLearner::ensure_initialized(std::size_t d) {
    if (initialized_) return;
    const std::size_t p = mapping_ ? mapped_dim(d) : d;
    ParamState seed = estimator_ == Estimator::Mle
                          ? ParamState::with_gain(p, kRlsInitGain)
                          : ParamState::from_regularizer(
                                MapPrior::identity(p).sigma_w_inv_scaled);
    ensemble_.base = seed;
    ensemble_.upper = seed;
    ensemble_.lower = std::move(seed);
    ensemble_.burn_in_remaining = burn_in_;
    initialized_ = true;
}

PredictionTriple ForgettingLinearLearner::predict(const DataPoint& x) {
    if (!initialized_) return PredictionTriple::unbounded(0.0);
    if (n_seen_ <= ensemble_.base.p) {
        const double mean =
            n_seen_ > 0 ? target_sum_ / static_cast<double>(n_seen_) : 0.0;
        return PredictionTriple::unbounded(mean);
    }
    return ensemble_predict(ensemble_, project(x));
}

LearnOutcome ForgettingLinearLearner::learn(const ObservedPair& pair,
                                            const PredictionTriple& last) {
    ensure_initialized(pair.point.size());
    LearnOutcome out;
    const core::StopwatchMs clock;
    ensemble_update(ensemble_, project(pair.point), pair.target, last, alpha_);
    target_sum_ += pair.target;
    ++n_seen_;
    out.update_ms = clock.elapsed();
    out.updated = true;
    return out;
}

Phase ForgettingLinearLearner::phase() const {
    return n_seen_ < burn_in_ ? Phase::ColdStart : Phase::Stable;
}

// ---------------------------------------------------------------------------
// WindowedLinearLearner

WindowedLinearLearner::WindowedLinearLearner(Estimator estimator,
                                             const core::LearnerConfig& config)
    : SlidingWindowLearner(config.window_size.value(), config),
      estimator_(estimator),
      mapping_(config.feature_mapping),
      z_(util::z_for_confidence(config.confidence_level)) {}

Vector WindowedLinearLearner::project(const DataPoint& x) const {
    return mapping_ ? map_features(x) : x;
}

void WindowedLinearLearner::ensure_initialized(std::size_t d) {
    if (initialized_) return;
    const std::size_t p = mapping_ ? mapped_dim(d) : d;
    if (estimator_ == Estimator::Mle) {
        state_ = ParamState::with_gain(p, kRlsInitGain);
        regularizer_ = Matrix::identity(p);
        regularizer_.scale(1.0 / kRlsInitGain);
    } else {
        const MapPrior prior = MapPrior::identity(p);
        state_ = ParamState::from_regularizer(prior.sigma_w_inv_scaled);
        regularizer_ = prior.sigma_w_inv_scaled;
    }
    initialized_ = true;
}

void WindowedLinearLearner::recompute_from_window() {
    windowed_recompute(
        state_, regularizer_, window_.count(), [&](std::size_t i) {
            const ObservedPair& pair = window_.at(i);
            return std::make_pair(project(pair.point), pair.target);
        });
}

void WindowedLinearLearner::refresh_s2() {
    try {
        state_.s2 = residual_s2(window_, state_.w, state_.p,
                                [&](const DataPoint& x) { return project(x); });
        state_.s2_valid = true;
    } catch (const InsufficientData&) {
        state_.s2_valid = false;
    }
}

void WindowedLinearLearner::absorb(const ObservedPair& pair,
                                   const PredictionTriple&) {
    ensure_initialized(pair.point.size());
    const Vector x = project(pair.point);

    // A repeated data point would make the gram matrix drift towards
    // singularity; only its stored target is refreshed.
    if (const auto dup = window_.find_duplicate(pair.point)) {
        const double old_target = window_.at(*dup).target;
        window_.set_target(*dup, pair.target);
        numkit::axpy(pair.target - old_target, x, state_.m2);
        state_.w = state_.m1.mul(state_.m2);
        refresh_s2();
        return;
    }

    try {
        if (window_.full()) {
            const auto dropped = window_.push(pair);
            windowed_remove(state_, project(dropped->point), dropped->target);
            windowed_absorb(state_, x, pair.target);
        } else {
            window_.push(pair);
            windowed_absorb(state_, x, pair.target);
        }
        // Rank-1 round-off compounds across updates (badly on mapped
        // features, whose gram matrices are poorly conditioned); a dense
        // resync once per recycled window keeps it at the floor.
        if (++ops_since_resync_ >= window_.capacity()) {
            recompute_from_window();
            ops_since_resync_ = 0;
        }
    } catch (const numkit::SingularUpdate&) {
        recompute_from_window();
        ops_since_resync_ = 0;
    }
    refresh_s2();
}

void WindowedLinearLearner::calibrate() {
    if (estimator_ == Estimator::Mle) return;  // nothing to tune
    const MapPrior prior = tune_map_prior(
        window_, [&](const DataPoint& x) { return project(x); }, sigma_grid_);
    regularizer_ = prior.sigma_w_inv_scaled;
    recompute_from_window();
    refresh_s2();
}

PredictionTriple WindowedLinearLearner::predict(const DataPoint& x) {
    if (!initialized_) return PredictionTriple::unbounded(0.0);
    // With fewer points than parameters the fit is not identified yet
    // and w^T x extrapolates wildly; answer with the target mean until
    // the window pins the parameters down.
    if (window_.count() <= state_.p) {
        double mean = 0.0;
        for (std::size_t i = 0; i < window_.count(); ++i)
            mean += window_.at(i).target;
        if (window_.count() > 0) mean /= static_cast<double>(window_.count());
        return PredictionTriple::unbounded(mean);
    }
    const Vector mapped = project(x);
    if (!state_.s2_valid)
        return PredictionTriple::unbounded(state_.predict(mapped));
    return asymptotic_bounds(mapped, state_, z_);
}

}  // namespace streamreg::parametric
