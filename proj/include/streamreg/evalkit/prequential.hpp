// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_EVALKIT_PREQUENTIAL_HPP
#define STREAMREG_EVALKIT_PREQUENTIAL_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <deque>

namespace streamreg::evalkit {

/// Interleaved test-then-train loss accounting. Three flavors:
///  - Plain: cumulative loss sum over the whole history.
///  - Fading: s = loss + delta * s, n = 1 + delta * n. With delta = 1
///    the recurrences are arithmetically identical to Plain.
///  - Window: mean over the most recent `size` losses.
class PrequentialAccumulator {
public:
    static PrequentialAccumulator plain() { return PrequentialAccumulator(); }

    static PrequentialAccumulator fading(double delta) {
        assert(delta > 0.0 && delta <= 1.0);
        PrequentialAccumulator acc;
        acc.mode_ = Mode::Fading;
        acc.delta_ = delta;
        return acc;
    }

    static PrequentialAccumulator window(std::size_t size) {
        assert(size > 0);
        PrequentialAccumulator acc;
        acc.mode_ = Mode::Window;
        acc.window_size_ = size;
        return acc;
    }

    void observe(double loss) {
        switch (mode_) {
            case Mode::Plain:
                s_ = s_ + loss;
                n_ = n_ + 1.0;
                break;
            case Mode::Fading:
                s_ = loss + delta_ * s_;
                n_ = 1.0 + delta_ * n_;
                break;
            case Mode::Window:
                buffer_.push_back(loss);
                if (buffer_.size() > window_size_) buffer_.pop_front();
                break;
        }
    }

    bool has_value() const {
        return mode_ == Mode::Window ? !buffer_.empty() : n_ > 0.0;
    }

    double mean() const {
        assert(has_value());
        if (mode_ != Mode::Window) return s_ / n_;
        // Centered summation: exact for constant sequences and better
        // conditioned in general.
        const double pivot = buffer_.front();
        double acc = 0.0;
        for (double v : buffer_) acc += v - pivot;
        return pivot + acc / static_cast<double>(buffer_.size());
    }

    std::size_t count() const {
        return mode_ == Mode::Window ? buffer_.size()
                                     : static_cast<std::size_t>(n_);
    }

private:
    enum class Mode { Plain, Fading, Window };

    PrequentialAccumulator() = default;

    Mode mode_ = Mode::Plain;
    double delta_ = 1.0;
    std::size_t window_size_ = 0;
    double s_ = 0.0;
    double n_ = 0.0;
    std::deque<double> buffer_;
};

/// Chernoff bound on the deviation of a prequential mean loss:
///   eps_c = sqrt(3 * ln(2 / delta) * mu_hat / n)
inline double chernoff_halfwidth(double mu_hat, std::size_t n,
                                 double delta_conf) {
    assert(n > 0 && delta_conf > 0.0 && delta_conf < 1.0);
    return std::sqrt(3.0 * std::log(2.0 / delta_conf) * mu_hat /
                     static_cast<double>(n));
}

}  // namespace streamreg::evalkit

#endif  // STREAMREG_EVALKIT_PREQUENTIAL_HPP
