// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_CORE_LIFECYCLE_HPP
#define STREAMREG_CORE_LIFECYCLE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace streamreg::core {

/// Lifecycle position of a sliding-windowed learner. Forgetting-based
/// learners use a trivial predict/update loop and stay in Stable.
enum class Phase { ColdStart, Stable, HighError, Tune };

enum class Event { WindowFull, TuneDone, DriftDetected, WindowRecycled };

struct IllegalTransition : std::logic_error {
    explicit IllegalTransition(const std::string& what)
        : std::logic_error(what) {}
};

const char* to_string(Phase phase);
const char* to_string(Event event);

/// The only legal edges:
///   ColdStart + WindowFull     -> Tune
///   Tune      + TuneDone       -> Stable
///   Stable    + DriftDetected  -> HighError
///   HighError + WindowRecycled -> Tune
/// Every other (phase, event) pair throws IllegalTransition.
Phase advance_state(Phase phase, Event event);

/// Streak-based drift trigger. A stable-phase error baseline (running
/// RMSE) is collected first; once armed, `streak_length` consecutive
/// errors each exceeding `ratio` times the baseline RMSE fire the
/// detector. Errors above the threshold do not feed the baseline, so a
/// drift burst cannot mask itself by inflating the reference level.
class DriftDetector {
public:
    struct Config {
        double ratio = 3.0;            // threshold multiple of baseline RMSE
        std::size_t streak_length = 5;    // consecutive outliers to fire
        std::size_t min_samples = 10;     // baseline size before arming
        double min_threshold = 1e-6;   // absolute floor for the trigger
    };

    DriftDetector() = default;
    explicit DriftDetector(const Config& config) : config_(config) {}

    /// Feeds one absolute prediction error; returns true when drift
    /// fires. The streak counter resets on fire.
    bool observe(double abs_error);

    /// Clears baseline and streak (call when a new stable phase begins).
    void reset();

    bool armed() const { return n_ >= config_.min_samples; }
    double baseline_rmse() const {
        return n_ > 0 ? std::sqrt(sum_sq_ / static_cast<double>(n_)) : 0.0;
    }

private:
    void absorb(double abs_error) {
        sum_sq_ += abs_error * abs_error;
        ++n_;
    }

    Config config_;
    double sum_sq_ = 0.0;
    std::size_t n_ = 0;
    std::size_t streak_ = 0;
};

}  // namespace streamreg::core

#endif  // STREAMREG_CORE_LIFECYCLE_HPP
