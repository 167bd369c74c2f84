// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_PARAMETRIC_RECURSIVE_LS_HPP
#define STREAMREG_PARAMETRIC_RECURSIVE_LS_HPP

#include <functional>
#include <stdexcept>

#include "streamreg/core/sliding_window.hpp"
#include "streamreg/core/types.hpp"
#include "streamreg/numkit/linalg.hpp"

namespace streamreg::parametric {

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& what)
        : std::runtime_error(what) {}
};

/// Initial gain for the least-squares state: m1 starts as kRlsInitGain * I,
/// i.e. an effective ridge of (1/kRlsInitGain) * I. Large enough that the
/// parameters diverge from the zero start quickly and the residual bias
/// against the plain least-squares solution stays negligible.
inline constexpr double kRlsInitGain = 10000.0;

/// Recursively maintained linear least-squares state.
///   m1 = (X X^T + R0)^-1   (R0 the fixed initial regularizer)
///   m2 = X y
///   w  = m1 * m2
/// s2 is the instantaneous squared residual error over the current
/// window, recomputed after windowed updates.
struct ParamState {
    numkit::Matrix m1;
    numkit::Vector m2;
    numkit::Vector w;
    std::size_t p = 0;
    double s2 = 0.0;
    bool s2_valid = false;
    std::size_t n_seen = 0;

    static ParamState with_gain(std::size_t p, double gain);

    /// m1 = regularizer^-1, the posterior-style start. Falls back to the
    /// identity when the regularizer is not invertible.
    static ParamState from_regularizer(const numkit::Matrix& regularizer);

    double predict(const numkit::Vector& x) const { return numkit::dot(w, x); }
};

/// Gaussian prior on the parameters, kept as the pre-scaled additive
/// regularization term sigma_y^2 * Sigma_w^-1.
struct MapPrior {
    double sigma_y = 1.0;
    numkit::Matrix sigma_w_inv_scaled;

    static MapPrior identity(std::size_t p) {
        return {1.0, numkit::Matrix::identity(p)};
    }
};

/// One recursive step with geometric forgetting:
///   m1 <- (1 / (1 - alpha)) * rank-1 update of m1 with x
///   w  <- w + m1 * x * (y - x^T w)
/// alpha = 0 reproduces exact recursive least squares.
void forgetting_update(ParamState& state, const numkit::Vector& x, double y,
                       double alpha);

/// Absorbs one pair into a windowed state (rank-1 update of m1, m2 and
/// refreshed w). Throws numkit::SingularUpdate for the caller to recover
/// via full recompute.
void windowed_absorb(ParamState& state, const numkit::Vector& x, double y);

/// Removes one pair from a windowed state (rank-1 downdate).
void windowed_remove(ParamState& state, const numkit::Vector& x, double y);

/// Rebuilds a windowed state from scratch: m1 = (sum x x^T + R0)^-1.
/// `at` yields the mapped point/target of window slot i.
void windowed_recompute(
    ParamState& state, const numkit::Matrix& regularizer, std::size_t count,
    const std::function<std::pair<numkit::Vector, double>(std::size_t)>& at);

/// Instantaneous squared residual error over the window:
///   s2 = sum_i (y_i - w^T phi(x_i))^2 / (n - p)
/// Throws InsufficientData when n <= p.
double residual_s2(
    const core::SlidingWindow& window, const numkit::Vector& w, std::size_t p,
    const std::function<numkit::Vector(const core::DataPoint&)>& project);

/// Asymptotic interval around the point prediction w^T x:
///   half-width = z * sqrt(s2 * x^T m1 x + s2)
core::PredictionTriple asymptotic_bounds(const numkit::Vector& x,
                                         const ParamState& state, double z);

/// Three-learner state backing the ad-hoc prediction bounds: the base
/// learner makes the point prediction while the upper/lower learners,
/// fed with filtered target streams after burn-in, track the bounds.
struct EnsembleState {
    ParamState base;
    ParamState upper;
    ParamState lower;
    std::size_t burn_in_remaining = 0;
};

core::PredictionTriple ensemble_predict(const EnsembleState& ensemble,
                                        const numkit::Vector& x);

/// Base always learns. After burn-in the upper learner only sees pairs
/// whose target exceeded the last lower bound, and the lower learner
/// only those below the last upper bound.
void ensemble_update(EnsembleState& ensemble, const numkit::Vector& x, double y,
                     const core::PredictionTriple& last, double alpha);

struct SigmaGrid {
    double min = 0.1;
    double max = 5.0;
    double step = 0.1;
};

/// Tunes the prior from the full window: Sigma_w is the population
/// covariance of the mapped window points and sigma_y the grid value
/// whose refit parameters minimize the window residual error (first
/// minimum wins ties). Falls back to Sigma_w = I when the covariance is
/// not invertible.
MapPrior tune_map_prior(
    const core::SlidingWindow& window,
    const std::function<numkit::Vector(const core::DataPoint&)>& project,
    const SigmaGrid& grid);

}  // namespace streamreg::parametric

#endif  // STREAMREG_PARAMETRIC_RECURSIVE_LS_HPP
