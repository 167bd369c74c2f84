// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_SIMCLI_BASELINE_HPP
#define STREAMREG_SIMCLI_BASELINE_HPP

#include "streamreg/core/learner.hpp"

namespace streamreg::simcli {

/// Trivial control: predicts the running mean of all targets observed
/// so far, with unbounded intervals. A calibration point for SMSE
/// (which is ~1 for this predictor by construction).
class MeanBaselineLearner : public core::Learner {
public:
    core::PredictionTriple predict(const core::DataPoint&) override {
        const double mean = n_ > 0 ? sum_ / static_cast<double>(n_) : 0.0;
        return core::PredictionTriple::unbounded(mean);
    }

    core::LearnOutcome learn(const core::ObservedPair& pair,
                             const core::PredictionTriple&) override {
        sum_ += pair.target;
        ++n_;
        return {.updated = true};
    }

    core::Phase phase() const override {
        return n_ > 0 ? core::Phase::Stable : core::Phase::ColdStart;
    }

private:
    double sum_ = 0.0;
    std::size_t n_ = 0;
};

}  // namespace streamreg::simcli

#endif  // STREAMREG_SIMCLI_BASELINE_HPP
