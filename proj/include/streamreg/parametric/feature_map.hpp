// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_PARAMETRIC_FEATURE_MAP_HPP
#define STREAMREG_PARAMETRIC_FEATURE_MAP_HPP

#include <stdexcept>

#include "streamreg/core/types.hpp"

namespace streamreg::parametric {

/// Thrown when a log/sqrt basis function meets a non-positive feature.
struct NonPositiveFeature : std::runtime_error {
    explicit NonPositiveFeature(const std::string& what)
        : std::runtime_error(what) {}
};

/// Output dimension of map_features: d + d(d+1)/2 + 2d
/// (degree-1 monomials, degree-2 monomials without duplicates, then a
/// log and a sqrt term per input dimension).
inline std::size_t mapped_dim(std::size_t d) {
    return d + d * (d + 1) / 2 + 2 * d;
}

/// Basis expansion used by the "Mapped" learner variants. Layout:
///   [x_1 .. x_d,
///    x_i * x_j for i <= j in lexicographic order,
///    ln x_1 .. ln x_d,
///    sqrt x_1 .. sqrt x_d]
/// All features must be strictly positive.
numkit::Vector map_features(const core::DataPoint& x);

}  // namespace streamreg::parametric

#endif  // STREAMREG_PARAMETRIC_FEATURE_MAP_HPP
