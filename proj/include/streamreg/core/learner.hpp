// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_CORE_LEARNER_HPP
#define STREAMREG_CORE_LEARNER_HPP

#include <chrono>
#include <cstdint>
#include <optional>

#include "streamreg/core/lifecycle.hpp"
#include "streamreg/core/sliding_window.hpp"
#include "streamreg/core/types.hpp"

namespace streamreg::core {

enum class Algorithm {
    MleForgetting,
    MleWindowed,
    MapForgetting,
    MapWindowed,
    GpRegression,
    KernelRegression,
    MeanBaseline,
};

enum class GpMean { Zero, Average, Ols };

/// Everything needed to instantiate one learner. Exactly one of
/// window_size / forgetting_factor must be set, matching the kind.
struct LearnerConfig {
    Algorithm kind = Algorithm::MleWindowed;
    std::optional<std::size_t> window_size;
    std::optional<double> forgetting_factor;
    bool feature_mapping = false;
    double confidence_level = 0.95;
    bool high_confidence = false;   // kernel regression: 99.9% intervals
    GpMean gp_mean = GpMean::Zero;
    DriftDetector::Config drift;
    std::size_t ensemble_burn_in = 30;
    bool batch = false;   // train on the first window of items, then freeze
    std::uint64_t seed = 0;

    void validate() const;
};

/// What one post-observation step did, with the learner-internal split
/// of time spent updating vs tuning.
struct LearnOutcome {
    bool updated = false;
    bool tuned = false;
    double update_ms = 0.0;
    double tune_ms = 0.0;
};

class StopwatchMs {
public:
    StopwatchMs() : start_(std::chrono::steady_clock::now()) {}
    double elapsed() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Common contract: predict must be called for a point before the pair
/// (point, observed target) is handed to learn together with the triple
/// that was emitted for it.
class Learner {
public:
    virtual ~Learner() = default;
    virtual PredictionTriple predict(const DataPoint& x) = 0;
    virtual LearnOutcome learn(const ObservedPair& pair,
                               const PredictionTriple& last) = 0;
    virtual Phase phase() const = 0;
};

/// Base for the sliding-windowed learners implementing the four-phase
/// lifecycle. Subclasses provide the incremental absorb step and the
/// full-window calibration; this class decides when they fire.
///
/// In Stable, updates are skipped entirely and only the drift detector
/// sees the prediction errors. A detected drift switches to HighError,
/// which absorbs every item until one full window has been recycled,
/// then recalibrates and returns to Stable.
class SlidingWindowLearner : public Learner {
public:
    SlidingWindowLearner(std::size_t capacity, const LearnerConfig& config)
        : window_(capacity),
          detector_(config.drift),
          freeze_after_calibration_(config.batch) {}

    LearnOutcome learn(const ObservedPair& pair,
                       const PredictionTriple& last) override;

    Phase phase() const override { return phase_; }
    const SlidingWindow& window() const { return window_; }
    bool frozen() const { return frozen_; }

protected:
    /// Incorporates one pair (manages the window itself: push, evict,
    /// caches). `last` is the triple emitted for the pair's point; most
    /// learners ignore it, kernel regression feeds its error tracker.
    /// Called in ColdStart and HighError.
    virtual void absorb(const ObservedPair& pair,
                        const PredictionTriple& last) = 0;

    /// Recalibrates on the full window (hyperparameter tuning). May be a
    /// no-op for learners without hyperparameters.
    virtual void calibrate() = 0;

    SlidingWindow window_;

private:
    void run_calibration(LearnOutcome& out);

    Phase phase_ = Phase::ColdStart;
    DriftDetector detector_;
    std::size_t recycled_ = 0;
    bool freeze_after_calibration_ = false;
    bool frozen_ = false;
};

}  // namespace streamreg::core

#endif  // STREAMREG_CORE_LEARNER_HPP
