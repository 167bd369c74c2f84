// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/parametric/feature_map.hpp"

#include <cmath>
#include <string>

namespace streamreg::parametric {

numkit::Vector map_features(const core::DataPoint& x) {
    const std::size_t d = x.size();
    numkit::Vector out;
    out.reserve(mapped_dim(d));
    for (std::size_t i = 0; i < d; ++i) out.push_back(x[i]);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) out.push_back(x[i] * x[j]);
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i] <= 0.0)
            throw NonPositiveFeature("feature " + std::to_string(i) +
                                     " is non-positive: " + std::to_string(x[i]));
        out.push_back(std::log(x[i]));
    }
    for (std::size_t i = 0; i < d; ++i) out.push_back(std::sqrt(x[i]));
    return out;
}

}  // namespace streamreg::parametric
