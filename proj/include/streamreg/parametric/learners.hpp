// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_PARAMETRIC_LEARNERS_HPP
#define STREAMREG_PARAMETRIC_LEARNERS_HPP

#include "streamreg/core/learner.hpp"
#include "streamreg/parametric/recursive_ls.hpp"

namespace streamreg::parametric {

enum class Estimator { Mle, Map };

/// Forgetting-based linear learner (MLE or MAP start). Point predictions
/// come from the base learner of a 3-learner ensemble; upper and lower
/// bounds are the point predictions of the filtered bound learners.
/// Follows the trivial predict/update loop: every pair is absorbed and
/// there is no tuning.
class ForgettingLinearLearner : public core::Learner {
public:
    ForgettingLinearLearner(Estimator estimator, const core::LearnerConfig& config);

    core::PredictionTriple predict(const core::DataPoint& x) override;
    core::LearnOutcome learn(const core::ObservedPair& pair,
                             const core::PredictionTriple& last) override;
    core::Phase phase() const override;

    const EnsembleState& ensemble() const { return ensemble_; }

private:
    void ensure_initialized(std::size_t d);
    numkit::Vector project(const core::DataPoint& x) const;

    Estimator estimator_;
    double alpha_;
    bool mapping_;
    std::size_t burn_in_;
    EnsembleState ensemble_;
    bool initialized_ = false;
    std::size_t n_seen_ = 0;
    double target_sum_ = 0.0;
};

/// Sliding-windowed linear learner (MLE or MAP). Parameters are kept in
/// sync with the window via rank-1 downdates/updates of the maintained
/// inverse; any singular step falls back to a dense recompute. Bounds
/// are the asymptotic intervals driven by the instantaneous squared
/// residual error.
///
/// MLE has no hyperparameters, so its calibration is empty. MAP refits
/// its prior (parameter covariance + noise level grid search) on every
/// calibration.
class WindowedLinearLearner : public core::SlidingWindowLearner {
public:
    WindowedLinearLearner(Estimator estimator, const core::LearnerConfig& config);

    core::PredictionTriple predict(const core::DataPoint& x) override;

    const ParamState& state() const { return state_; }
    const numkit::Matrix& regularizer() const { return regularizer_; }

protected:
    void absorb(const core::ObservedPair& pair,
                const core::PredictionTriple& last) override;
    void calibrate() override;

private:
    void ensure_initialized(std::size_t d);
    numkit::Vector project(const core::DataPoint& x) const;
    void recompute_from_window();
    void refresh_s2();

    Estimator estimator_;
    bool mapping_;
    double z_;
    SigmaGrid sigma_grid_;
    ParamState state_;
    numkit::Matrix regularizer_;   // fixed additive term in the maintained gram
    bool initialized_ = false;
    std::size_t ops_since_resync_ = 0;
};

}  // namespace streamreg::parametric

#endif  // STREAMREG_PARAMETRIC_LEARNERS_HPP
