// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/core/lifecycle.hpp"

#include <algorithm>

namespace streamreg::core {

const char* to_string(Phase phase) {
    switch (phase) {
        case Phase::ColdStart: return "ColdStart";
        case Phase::Stable: return "Stable";
        case Phase::HighError: return "HighError";
        case Phase::Tune: return "Tune";
    }
    return "?";
}

const char* to_string(Event event) {
    switch (event) {
        case Event::WindowFull: return "WindowFull";
        case Event::TuneDone: return "TuneDone";
        case Event::DriftDetected: return "DriftDetected";
        case Event::WindowRecycled: return "WindowRecycled";
    }
    return "?";
}

Phase advance_state(Phase phase, Event event) {
    if (phase == Phase::ColdStart && event == Event::WindowFull)
        return Phase::Tune;
    if (phase == Phase::Tune && event == Event::TuneDone)
        return Phase::Stable;
    if (phase == Phase::Stable && event == Event::DriftDetected)
        return Phase::HighError;
    if (phase == Phase::HighError && event == Event::WindowRecycled)
        return Phase::Tune;
    throw IllegalTransition(std::string("no edge ") + to_string(phase) + " + " +
                            to_string(event));
}

bool DriftDetector::observe(double abs_error) {
    if (!armed()) {
        absorb(abs_error);
        return false;
    }
    const double threshold =
        std::max(config_.ratio * baseline_rmse(), config_.min_threshold);
    if (abs_error > threshold) {
        if (++streak_ >= config_.streak_length) {
            streak_ = 0;
            return true;
        }
    } else {
        streak_ = 0;
        absorb(abs_error);
    }
    return false;
}

void DriftDetector::reset() {
    sum_sq_ = 0.0;
    n_ = 0;
    streak_ = 0;
}

}  // namespace streamreg::core
