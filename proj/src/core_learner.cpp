// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/core/learner.hpp"

#include <cmath>
#include <stdexcept>

namespace streamreg::core {

void LearnerConfig::validate() const {
    const bool windowed = kind == Algorithm::MleWindowed ||
                          kind == Algorithm::MapWindowed ||
                          kind == Algorithm::GpRegression ||
                          kind == Algorithm::KernelRegression;
    const bool forgetting = kind == Algorithm::MleForgetting ||
                            kind == Algorithm::MapForgetting;
    if (windowed) {
        if (!window_size || forgetting_factor)
            throw std::invalid_argument(
                "windowed learner requires window_size and no forgetting factor");
        if (*window_size < 2)
            throw std::invalid_argument("window_size must be at least 2");
    } else if (forgetting) {
        if (!forgetting_factor || window_size)
            throw std::invalid_argument(
                "forgetting learner requires forgetting_factor and no window size");
        if (*forgetting_factor < 0.0 || *forgetting_factor >= 1.0)
            throw std::invalid_argument("forgetting_factor must be in [0, 1)");
        if (batch)
            throw std::invalid_argument("forgetting learners have no batch mode");
    }
    if (confidence_level <= 0.0 || confidence_level >= 1.0)
        throw std::invalid_argument("confidence_level must be in (0, 1)");
}

void SlidingWindowLearner::run_calibration(LearnOutcome& out) {
    const StopwatchMs clock;
    calibrate();
    out.tune_ms = clock.elapsed();
    out.tuned = true;
    detector_.reset();
    phase_ = advance_state(Phase::Tune, Event::TuneDone);
    if (freeze_after_calibration_) frozen_ = true;
}

LearnOutcome SlidingWindowLearner::learn(const ObservedPair& pair,
                                         const PredictionTriple& last) {
    LearnOutcome out;
    switch (phase_) {
        case Phase::ColdStart: {
            const StopwatchMs clock;
            absorb(pair, last);
            out.update_ms = clock.elapsed();
            out.updated = true;
            if (window_.full()) {
                phase_ = advance_state(Phase::ColdStart, Event::WindowFull);
                run_calibration(out);
            }
            break;
        }
        case Phase::Stable: {
            if (frozen_) break;
            if (detector_.observe(std::abs(pair.target - last.point))) {
                phase_ = advance_state(Phase::Stable, Event::DriftDetected);
                const StopwatchMs clock;
                absorb(pair, last);
                out.update_ms = clock.elapsed();
                out.updated = true;
                recycled_ = 1;
            }
            break;
        }
        case Phase::HighError: {
            const StopwatchMs clock;
            absorb(pair, last);
            out.update_ms = clock.elapsed();
            out.updated = true;
            if (++recycled_ >= window_.capacity()) {
                phase_ = advance_state(Phase::HighError, Event::WindowRecycled);
                run_calibration(out);
            }
            break;
        }
        case Phase::Tune:
            // Tune is transient inside this method; learn() is never
            // entered while in it.
            throw IllegalTransition("learn() called in Tune phase");
    }
    return out;
}

}  // namespace streamreg::core
