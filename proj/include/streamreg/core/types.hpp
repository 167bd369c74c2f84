// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_CORE_TYPES_HPP
#define STREAMREG_CORE_TYPES_HPP

#include <algorithm>

#include "streamreg/numkit/matrix.hpp"

namespace streamreg::core {

/// Feature vector of one stream item (for runtime data: input sizes).
using DataPoint = numkit::Vector;

/// A data point together with its observed target (runtime in ms).
struct ObservedPair {
    DataPoint point;
    double target = 0.0;
};

/// Sentinel half-width used when a learner cannot bound its prediction
/// yet (cold start, degenerate density): effectively infinite bounds
/// without the hassle of actual infinities downstream.
inline constexpr double kUnboundedHalfWidth = 1e18;

/// Lower bound, point prediction and upper bound for one query point.
struct PredictionTriple {
    double lower = 0.0;
    double point = 0.0;
    double upper = 0.0;

    /// Orders the three values so lower <= point <= upper always holds.
    static PredictionTriple clamped(double lower, double point, double upper) {
        return {std::min(lower, point), point, std::max(upper, point)};
    }

    static PredictionTriple unbounded(double point) {
        return {point - kUnboundedHalfWidth, point, point + kUnboundedHalfWidth};
    }

    double width() const { return upper - lower; }
    bool contains(double y) const { return lower <= y && y <= upper; }
};

}  // namespace streamreg::core

#endif  // STREAMREG_CORE_TYPES_HPP
