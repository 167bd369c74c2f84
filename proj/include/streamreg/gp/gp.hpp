// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_GP_GP_HPP
#define STREAMREG_GP_GP_HPP

#include <deque>
#include <functional>
#include <stdexcept>

#include "streamreg/core/learner.hpp"
#include "streamreg/numkit/linalg.hpp"
#include "streamreg/parametric/recursive_ls.hpp"
#include "streamreg/util/rng.hpp"

namespace streamreg::gp {

/// Thrown when an incremental kernel-inverse step meets a numerically
/// zero pivot (near-duplicate point). Callers recover with a dense
/// recompute.
struct DegenerateScalar : std::runtime_error {
    explicit DegenerateScalar(const std::string& what)
        : std::runtime_error(what) {}
};

inline constexpr double kDegenerateScalar = 1e-12;

/// Kernel hyperparameters stored as log-space proxies so unconstrained
/// gradient steps can never produce a negative variance or lengthscale:
/// sigma_w = e^px_w, sigma_y = e^px_y, l_i = e^px_l[i].
struct GpHyperParams {
    double px_w = 0.0;
    double px_y = 0.0;
    numkit::Vector px_l;

    static GpHyperParams neutral(std::size_t d) {
        GpHyperParams h;
        h.px_l.assign(d, 0.0);
        return h;
    }

    double sigma_w() const { return std::exp(px_w); }
    double sigma_y() const { return std::exp(px_y); }
    double lengthscale(std::size_t i) const { return std::exp(px_l[i]); }
    std::size_t proxy_count() const { return 2 + px_l.size(); }
};

/// Squared-exponential kernel
///   sigma_w^2 * exp(-1/2 (xp-xq)^T D^-2 (xp-xq)) + sigma_y^2 * [p == q]
/// The noise term fires on stored-index identity (`same_index`), not on
/// feature equality: noise across distinct observations is uncorrelated
/// even when their inputs coincide.
double sq_exp_kernel(const core::DataPoint& xp, const core::DataPoint& xq,
                     const GpHyperParams& h, bool same_index);

using PointAccessor = std::function<const core::DataPoint&(std::size_t)>;

numkit::Matrix build_kernel_matrix(std::size_t n, const PointAccessor& at,
                                   const GpHyperParams& h);

/// Kernel evaluations of a query point against n stored points.
numkit::Vector kernel_vector(std::size_t n, const PointAccessor& at,
                             const core::DataPoint& x, const GpHyperParams& h);

/// Kernel matrix and its maintained inverse.
struct KernelCache {
    numkit::Matrix k;
    numkit::Matrix k_inv;
    std::size_t size() const { return k.rows(); }
};

/// Drops the first (oldest) row/column:
///   K^-1 partitioned as [[e, f^T], [f, G]]  ->  K_new^-1 = G - f f^T / e
/// Throws DegenerateScalar when |e| is numerically zero.
void cache_remove_oldest(KernelCache& cache);

/// Appends a point given its kernel vector b against the stored points
/// and self-measure k_self:
///   g = 1 / (k_self - b^T K^-1 b),  f = -K^-1 b g,
///   E = K^-1 + (K^-1 b)(K^-1 b)^T g
/// Throws DegenerateScalar when the Schur complement is numerically zero.
void cache_add_point(KernelCache& cache, const numkit::Vector& b, double k_self);

/// Marginal log likelihood
///   -(n/2) ln 2pi - 1/2 ln|K| - 1/2 (y-m)^T K^-1 (y-m)
/// with ln|K| taken from the Cholesky factor of cache.k.
double log_likelihood(const KernelCache& cache, const numkit::Vector& y,
                      const numkit::Vector& m);

/// Gradient of the log likelihood with respect to the proxies, one entry
/// per (px_w, px_y, px_l...). Built from the elementwise kernel
/// derivative matrices.
numkit::Vector log_likelihood_gradient(std::size_t n, const PointAccessor& at,
                                       const KernelCache& cache,
                                       const numkit::Vector& y,
                                       const numkit::Vector& m,
                                       const GpHyperParams& h);

struct GpTuneOptions {
    std::size_t max_iterations = 50;
    std::size_t max_decay_count = 10;
    double max_step_size = 1.0;
    double decayer = 0.5;
    double gradient_tolerance = 1e-4;   // infinity norm
    double restart_low = -3.0;
    double restart_high = 3.0;
};

/// Sliding-window Gaussian Process learner with one of three mean
/// functions. The kernel inverse is maintained incrementally across
/// window slides; calibration runs the hybrid random-restart /
/// gradient-descent-with-step-decay search over the proxy space and
/// never leaves the learner worse than it started.
class GpLearner : public core::SlidingWindowLearner {
public:
    explicit GpLearner(const core::LearnerConfig& config);

    core::PredictionTriple predict(const core::DataPoint& x) override;

    const GpHyperParams& hyperparams() const { return hyper_; }
    const KernelCache& cache() const { return cache_; }

    /// Replaces the kernel hyperparameters and rebuilds the caches for
    /// the current window contents.
    void set_hyperparams(const GpHyperParams& h);

    void set_tune_options(const GpTuneOptions& options) {
        tune_options_ = options;
    }

    /// Mean-function value for a query point (Zero -> 0, Average ->
    /// running target mean, Ols -> embedded least-squares prediction).
    double mean_value(const core::DataPoint& x) const;

    double current_log_likelihood() const;

    /// Exposed for calibration-behavior tests; learn() invokes it
    /// through the lifecycle.
    void tune_hyperparameters();

protected:
    void absorb(const core::ObservedPair& pair,
                const core::PredictionTriple& last) override;
    void calibrate() override { tune_hyperparameters(); }

private:
    void ensure_initialized(std::size_t d);
    void rebuild_cache(const GpHyperParams& h);
    numkit::Vector targets() const;
    numkit::Vector means() const;
    PointAccessor window_points() const;

    core::GpMean mean_kind_;
    GpHyperParams hyper_;
    KernelCache cache_;
    std::deque<double> mean_ring_;
    double target_sum_ = 0.0;
    std::size_t target_count_ = 0;
    parametric::ParamState ols_state_;
    GpTuneOptions tune_options_;
    util::Rng rng_;
    double z_;
    bool initialized_ = false;
};

}  // namespace streamreg::gp

#endif  // STREAMREG_GP_GP_HPP
