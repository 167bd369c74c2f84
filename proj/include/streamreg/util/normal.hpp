// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_UTIL_NORMAL_HPP
#define STREAMREG_UTIL_NORMAL_HPP

#include <cmath>
#include <stdexcept>

namespace streamreg::util {

/// Inverse standard-normal CDF (Acklam's rational approximation,
/// relative error below 1.15e-9).
double normal_quantile(double p);

/// Two-sided z-value for a confidence level in (0, 1). The two levels
/// used throughout the learners are pinned to their conventional
/// rounded constants (0.95 -> 1.96, 0.999 -> 3.2905) so that interval
/// widths and width ratios are exactly reproducible; anything else
/// falls through to normal_quantile.
inline double z_for_confidence(double confidence) {
    if (confidence <= 0.0 || confidence >= 1.0)
        throw std::invalid_argument("confidence must be in (0, 1)");
    if (std::abs(confidence - 0.95) < 1e-12) return 1.96;
    if (std::abs(confidence - 0.999) < 1e-12) return 3.2905;
    return normal_quantile(1.0 - (1.0 - confidence) / 2.0);
}

}  // namespace streamreg::util

#endif  // STREAMREG_UTIL_NORMAL_HPP
