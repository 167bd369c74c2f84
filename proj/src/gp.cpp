// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/gp/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "streamreg/util/normal.hpp"

namespace streamreg::gp {

using core::DataPoint;
using core::ObservedPair;
using core::PredictionTriple;
using numkit::Matrix;
using numkit::Vector;

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
}

double sq_exp_kernel(const DataPoint& xp, const DataPoint& xq,
                     const GpHyperParams& h, bool same_index) {
    assert(xp.size() == xq.size() && xp.size() == h.px_l.size());
    double quad = 0.0;
    for (std::size_t i = 0; i < xp.size(); ++i) {
        const double diff = xp[i] - xq[i];
        const double inv_l = std::exp(-h.px_l[i]);
        quad += diff * inv_l * diff * inv_l;
    }
    const double sw = h.sigma_w();
    double value = sw * sw * std::exp(-0.5 * quad);
    if (same_index) {
        const double sy = h.sigma_y();
        value += sy * sy;
    }
    return value;
}

Matrix build_kernel_matrix(std::size_t n, const PointAccessor& at,
                           const GpHyperParams& h) {
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        k(i, i) = sq_exp_kernel(at(i), at(i), h, true);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = sq_exp_kernel(at(i), at(j), h, false);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Vector kernel_vector(std::size_t n, const PointAccessor& at, const DataPoint& x,
                     const GpHyperParams& h) {
    Vector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = sq_exp_kernel(at(i), x, h, false);
    return b;
}

void cache_remove_oldest(KernelCache& cache) {
    const std::size_t n = cache.size();
    assert(n > 0);
    const double e = cache.k_inv(0, 0);
    if (std::abs(e) < kDegenerateScalar)
        throw DegenerateScalar("cache_remove_oldest: leading inverse entry " +
                               std::to_string(e));
    Matrix k(n - 1, n - 1);
    Matrix k_inv(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        const double fi = cache.k_inv(i, 0);
        for (std::size_t j = 1; j < n; ++j) {
            k(i - 1, j - 1) = cache.k(i, j);
            k_inv(i - 1, j - 1) = cache.k_inv(i, j) - fi * cache.k_inv(j, 0) / e;
        }
    }
    cache.k = std::move(k);
    cache.k_inv = std::move(k_inv);
}

void cache_add_point(KernelCache& cache, const Vector& b, double k_self) {
    const std::size_t n = cache.size();
    assert(b.size() == n);
    Matrix k(n + 1, n + 1);
    Matrix k_inv(n + 1, n + 1);

    const Vector u = n > 0 ? cache.k_inv.mul(b) : Vector{};
    const double schur = k_self - (n > 0 ? numkit::dot(b, u) : 0.0);
    if (schur < kDegenerateScalar)
        throw DegenerateScalar("cache_add_point: Schur complement " +
                               std::to_string(schur));
    const double g = 1.0 / schur;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            k(i, j) = cache.k(i, j);
            k_inv(i, j) = cache.k_inv(i, j) + u[i] * u[j] * g;
        }
        k(i, n) = b[i];
        k(n, i) = b[i];
        k_inv(i, n) = -u[i] * g;
        k_inv(n, i) = -u[i] * g;
    }
    k(n, n) = k_self;
    k_inv(n, n) = g;

    cache.k = std::move(k);
    cache.k_inv = std::move(k_inv);
}

double log_likelihood(const KernelCache& cache, const Vector& y,
                      const Vector& m) {
    const std::size_t n = cache.size();
    assert(y.size() == n && m.size() == n);
    Vector centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = y[i] - m[i];
    const double quad = numkit::dot(centered, cache.k_inv.mul(centered));
    const double log_det = numkit::log_det_psd(cache.k);
    return -0.5 * static_cast<double>(n) * kLog2Pi - 0.5 * log_det - 0.5 * quad;
}

Vector log_likelihood_gradient(std::size_t n, const PointAccessor& at,
                               const KernelCache& cache, const Vector& y,
                               const Vector& m, const GpHyperParams& h) {
    const std::size_t d = h.px_l.size();
    Vector centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = y[i] - m[i];
    const Vector alpha = cache.k_inv.mul(centered);

    const double sw2 = h.sigma_w() * h.sigma_w();
    const double sy2 = h.sigma_y() * h.sigma_y();

    // Per-proxy elementwise derivative of K. The diagonal of K carries
    // the noise term, so its signal part is sw2 rather than K_ii.
    const auto dk_entry = [&](std::size_t proxy, std::size_t i,
                              std::size_t j) -> double {
        if (proxy == 0) {  // px_w
            if (i == j) return 2.0 * sw2;
            return 2.0 * cache.k(i, j);
        }
        if (proxy == 1)  // px_y
            return i == j ? 2.0 * sy2 : 0.0;
        const std::size_t dim = proxy - 2;
        if (i == j) return 0.0;
        const double diff = at(i)[dim] - at(j)[dim];
        return cache.k(i, j) * diff * diff * std::exp(-2.0 * h.px_l[dim]);
    };

    Vector grad(2 + d, 0.0);
    for (std::size_t proxy = 0; proxy < 2 + d; ++proxy) {
        double data_fit = 0.0;
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double dk = dk_entry(proxy, i, j);
                if (dk == 0.0) continue;
                data_fit += alpha[i] * dk * alpha[j];
                trace += cache.k_inv(i, j) * dk;
            }
        }
        grad[proxy] = 0.5 * data_fit - 0.5 * trace;
    }
    return grad;
}

// ---------------------------------------------------------------------------
// GpLearner

GpLearner::GpLearner(const core::LearnerConfig& config)
    : SlidingWindowLearner(config.window_size.value(), config),
      mean_kind_(config.gp_mean),
      rng_(config.seed ^ 0x67503A2Bu),
      z_(util::z_for_confidence(config.confidence_level)) {}

void GpLearner::ensure_initialized(std::size_t d) {
    if (initialized_) return;
    hyper_ = GpHyperParams::neutral(d);
    if (mean_kind_ == core::GpMean::Ols)
        ols_state_ = parametric::ParamState::with_gain(d, parametric::kRlsInitGain);
    initialized_ = true;
}

PointAccessor GpLearner::window_points() const {
    return [this](std::size_t i) -> const DataPoint& {
        return window_.at(i).point;
    };
}

Vector GpLearner::targets() const {
    Vector y(window_.count());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = window_.at(i).target;
    return y;
}

Vector GpLearner::means() const {
    return Vector(mean_ring_.begin(), mean_ring_.end());
}

double GpLearner::mean_value(const DataPoint& x) const {
    switch (mean_kind_) {
        case core::GpMean::Zero:
            return 0.0;
        case core::GpMean::Average:
            return target_count_ > 0
                       ? target_sum_ / static_cast<double>(target_count_)
                       : 0.0;
        case core::GpMean::Ols:
            return initialized_ ? ols_state_.predict(x) : 0.0;
    }
    return 0.0;
}

void GpLearner::set_hyperparams(const GpHyperParams& h) {
    ensure_initialized(h.px_l.size());
    hyper_ = h;
    if (window_.count() > 0) rebuild_cache(hyper_);
}

void GpLearner::rebuild_cache(const GpHyperParams& h) {
    const std::size_t n = window_.count();
    cache_.k = build_kernel_matrix(n, window_points(), h);
    // Escalating diagonal jitter covers the rare near-singular window.
    double jitter = 0.0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        Matrix k = cache_.k;
        if (jitter > 0.0)
            for (std::size_t i = 0; i < n; ++i) k(i, i) += jitter;
        try {
            cache_.k_inv = numkit::invert_psd(k);
            cache_.k = std::move(k);
            return;
        } catch (const numkit::NotPositiveDefinite&) {
            jitter = jitter == 0.0 ? 1e-10 * (1.0 + h.sigma_w() * h.sigma_w())
                                   : jitter * 100.0;
        }
    }
    throw numkit::NotPositiveDefinite("gp kernel matrix not invertible");
}

void GpLearner::absorb(const ObservedPair& pair, const PredictionTriple&) {
    ensure_initialized(pair.point.size());
    // The stored mean is the mean-function value before this pair's
    // target enters the running statistics.
    const double mu = mean_value(pair.point);

    bool need_rebuild = false;
    const auto dropped = window_.push(pair);
    if (dropped) {
        mean_ring_.pop_front();
        try {
            cache_remove_oldest(cache_);
        } catch (const DegenerateScalar&) {
            need_rebuild = true;
        }
    }
    mean_ring_.push_back(mu);

    if (!need_rebuild) {
        // Window already holds the new point at the last slot; its
        // kernel vector is built against the older entries only.
        const std::size_t n_old = window_.count() - 1;
        const Vector b = kernel_vector(n_old, window_points(), pair.point, hyper_);
        const double k_self = sq_exp_kernel(pair.point, pair.point, hyper_, true);
        try {
            cache_add_point(cache_, b, k_self);
        } catch (const DegenerateScalar&) {
            need_rebuild = true;
        }
    }
    if (need_rebuild) rebuild_cache(hyper_);

    target_sum_ += pair.target;
    ++target_count_;
    if (mean_kind_ == core::GpMean::Ols)
        parametric::forgetting_update(ols_state_, pair.point, pair.target, 0.0);
}

PredictionTriple GpLearner::predict(const DataPoint& x) {
    if (!initialized_ || window_.count() < 2)
        return PredictionTriple::unbounded(mean_value(x));

    const std::size_t n = window_.count();
    const Vector b = kernel_vector(n, window_points(), x, hyper_);
    const Vector u = cache_.k_inv.mul(b);

    const Vector y = targets();
    double mean = mean_value(x);
    for (std::size_t i = 0; i < n; ++i) mean += u[i] * (y[i] - mean_ring_[i]);

    // var = k(x,x) - b^T K^-1 b, split so the noise floor survives: the
    // function-variance part is the one subject to cancellation, and an
    // observation can never be less uncertain than its own noise.
    const double sw2 = hyper_.sigma_w() * hyper_.sigma_w();
    const double sy2 = hyper_.sigma_y() * hyper_.sigma_y();
    const double var = sy2 + std::clamp(sw2 - numkit::dot(b, u), 0.0, sw2);

    const double half_width = z_ * std::sqrt(var);
    return PredictionTriple::clamped(mean - half_width, mean, mean + half_width);
}

double GpLearner::current_log_likelihood() const {
    return log_likelihood(cache_, targets(), means());
}

void GpLearner::tune_hyperparameters() {
    const std::size_t n = window_.count();
    if (n < 2) return;
    const Vector y = targets();
    const Vector m = means();
    const std::size_t n_proxy = hyper_.proxy_count();

    const auto proxies_of = [&](const GpHyperParams& h) {
        Vector v{h.px_w, h.px_y};
        v.insert(v.end(), h.px_l.begin(), h.px_l.end());
        return v;
    };
    const auto hyper_from = [&](const Vector& v) {
        GpHyperParams h;
        h.px_w = v[0];
        h.px_y = v[1];
        h.px_l.assign(v.begin() + 2, v.end());
        return h;
    };
    const auto evaluate = [&](const Vector& proxies,
                              KernelCache& out) -> double {
        const GpHyperParams h = hyper_from(proxies);
        out.k = build_kernel_matrix(n, window_points(), h);
        try {
            out.k_inv = numkit::invert_psd(out.k);
        } catch (const numkit::NotPositiveDefinite&) {
            return -std::numeric_limits<double>::infinity();
        }
        return log_likelihood(out, y, m);
    };

    // Restart sampling is centered on the data scale: a residual-sized
    // signal deviation, a noise level at or below it, and lengthscales
    // around the per-dimension input spread. Fixed-range sampling around
    // zero cannot reach the relevant region once targets live on scales
    // of 1e3 and up.
    Vector restart_center(n_proxy, 0.0);
    {
        double mean_r = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean_r += (y[i] - m[i]) / n;
        double var_r = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            var_r += (y[i] - m[i] - mean_r) * (y[i] - m[i] - mean_r) / n;
        restart_center[0] = std::log(std::max(std::sqrt(var_r), 1e-6));
        restart_center[1] = restart_center[0];
        const std::size_t d = hyper_.px_l.size();
        for (std::size_t k = 0; k < d; ++k) {
            double mean_x = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                mean_x += window_.at(i).point[k] / n;
            double var_x = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double diff = window_.at(i).point[k] - mean_x;
                var_x += diff * diff / n;
            }
            restart_center[2 + k] = std::log(std::max(std::sqrt(var_x), 1e-6));
        }
    }
    // The search stays inside a data-scaled box. Without the cap on the
    // signal proxy, ascent crawls the flat sigma_w/lengthscale ridge into
    // configurations whose kernel matrices are numerically hopeless.
    Vector box_lo(n_proxy), box_hi(n_proxy);
    box_lo[0] = restart_center[0] - 6.0;
    box_hi[0] = restart_center[0] + 1.5;
    box_lo[1] = restart_center[1] - 9.0;
    box_hi[1] = restart_center[1] + 1.5;
    for (std::size_t k = 2; k < n_proxy; ++k) {
        box_lo[k] = restart_center[k] - 5.0;
        box_hi[k] = restart_center[k] + 5.0;
    }
    const auto clamp_into_box = [&](Vector& proxies) {
        for (std::size_t k = 0; k < n_proxy; ++k)
            proxies[k] = std::clamp(proxies[k], box_lo[k], box_hi[k]);
    };
    const auto sample_restart = [&](Vector& proxies) {
        proxies[0] = restart_center[0] +
                     rng_.uniform(tune_options_.restart_low, tune_options_.restart_high);
        // noise at or below the residual scale
        proxies[1] = restart_center[1] + rng_.uniform(2.0 * tune_options_.restart_low, 0.0);
        for (std::size_t k = 2; k < n_proxy; ++k)
            proxies[k] = restart_center[k] +
                         rng_.uniform(tune_options_.restart_low,
                                      tune_options_.restart_high);
        clamp_into_box(proxies);
    };

    const Vector init_proxies = proxies_of(hyper_);
    const double init_ll = current_log_likelihood();

    Vector current = init_proxies;
    KernelCache current_cache = cache_;
    double current_ll = init_ll;

    Vector best = init_proxies;
    double best_ll = init_ll;

    for (std::size_t iteration = 0; iteration < tune_options_.max_iterations;
         ++iteration) {
        bool moved = false;
        if (std::isfinite(current_ll)) {
            const Vector grad =
                log_likelihood_gradient(n, window_points(), current_cache, y, m,
                                        hyper_from(current));
            double grad_norm = 0.0;
            for (double g : grad) grad_norm = std::max(grad_norm, std::abs(g));
            if (grad_norm < tune_options_.gradient_tolerance) {
                if (current_ll > best_ll) {
                    best = current;
                    best_ll = current_ll;
                }
                break;  // approximately a local optimum
            }

            // Ascent along the normalized gradient direction, halving
            // the step until the log likelihood stops getting worse.
            // Raw gradients reach 1e4+ on badly scaled starts, far more
            // than the decay schedule can absorb.
            Vector direction = grad;
            for (double& g : direction) g /= grad_norm;
            double step = tune_options_.max_step_size;
            for (std::size_t decay = 0; decay <= tune_options_.max_decay_count;
                 ++decay) {
                Vector test = current;
                for (std::size_t i = 0; i < n_proxy; ++i)
                    test[i] += step * direction[i];
                clamp_into_box(test);
                KernelCache test_cache;
                const double test_ll = evaluate(test, test_cache);
                if (test_ll > current_ll) {
                    current = std::move(test);
                    current_cache = std::move(test_cache);
                    current_ll = test_ll;
                    moved = true;
                    break;
                }
                step *= tune_options_.decayer;
            }
        }

        if (moved) {
            if (current_ll > best_ll) {
                best = current;
                best_ll = current_ll;
            }
        } else {
            // No productive step from here; restart at a random point.
            sample_restart(current);
            current_ll = evaluate(current, current_cache);
            if (current_ll > best_ll) {
                best = current;
                best_ll = current_ll;
            }
        }
    }

    // Never end up worse than the starting configuration.
    hyper_ = hyper_from(best_ll >= init_ll ? best : init_proxies);
    rebuild_cache(hyper_);
}

}  // namespace streamreg::gp
