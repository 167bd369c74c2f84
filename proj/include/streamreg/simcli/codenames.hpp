// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_SIMCLI_CODENAMES_HPP
#define STREAMREG_SIMCLI_CODENAMES_HPP

#include <memory>
#include <string>

#include "streamreg/core/learner.hpp"

namespace streamreg::simcli {

struct CodenameError : std::runtime_error {
    explicit CodenameError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Codename grammar (suffix carries the adaptation parameter):
///   BayesianMLEForgetting[Mapped]_FF<alpha>
///   BayesianMAPForgetting[Mapped]_FF<alpha>
///   BayesianMLEWindowed[Mapped]_WS<w>
///   BayesianMAPWindowed[Mapped]_WS<w>
///   GPRegression[GaussianKernel](Zero|Avg|OLS)Mean_WS<w>
///   KernelRegression[_HighConf]_WS<w>
///   (Batch controls) BayesianMLEBatch[Mapped]_TS<n>, GPRegression...Batch_TS<n>,
///   KernelRegressionBatch_TS<n>
///   MeanPredictor
std::string encode_codename(const core::LearnerConfig& config);
core::LearnerConfig decode_codename(const std::string& codename);

/// Algorithm family prefix of a codename (BayesianMLE, BayesianMAP,
/// GPRegression, KernelRegression, MeanPredictor), used for grouping.
std::string family_of(const std::string& codename);

std::unique_ptr<core::Learner> make_learner(const core::LearnerConfig& config);

inline std::unique_ptr<core::Learner> make_learner(const std::string& codename,
                                                   std::uint64_t seed = 0) {
    core::LearnerConfig config = decode_codename(codename);
    config.seed = seed;
    return make_learner(config);
}

}  // namespace streamreg::simcli

#endif  // STREAMREG_SIMCLI_CODENAMES_HPP
