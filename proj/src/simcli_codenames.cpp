// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/simcli/codenames.hpp"

#include <sstream>

#include "streamreg/gp/gp.hpp"
#include "streamreg/kreg/kreg.hpp"
#include "streamreg/parametric/learners.hpp"
#include "streamreg/simcli/baseline.hpp"

namespace streamreg::simcli {

using core::Algorithm;
using core::GpMean;
using core::LearnerConfig;

namespace {

std::string format_alpha(double alpha) {
    std::ostringstream out;
    out << alpha;
    return out.str();
}

bool consume_prefix(std::string& s, const std::string& prefix) {
    if (s.rfind(prefix, 0) != 0) return false;
    s.erase(0, prefix.size());
    return true;
}

}  // namespace

std::string encode_codename(const LearnerConfig& config) {
    std::ostringstream out;
    const char* size_tag = config.batch ? "_TS" : "_WS";
    switch (config.kind) {
        case Algorithm::MleForgetting:
        case Algorithm::MapForgetting:
            out << (config.kind == Algorithm::MleForgetting ? "BayesianMLE"
                                                            : "BayesianMAP")
                << "Forgetting" << (config.feature_mapping ? "Mapped" : "")
                << "_FF" << format_alpha(config.forgetting_factor.value());
            break;
        case Algorithm::MleWindowed:
        case Algorithm::MapWindowed:
            out << (config.kind == Algorithm::MleWindowed ? "BayesianMLE"
                                                          : "BayesianMAP")
                << (config.batch ? "Batch" : "Windowed")
                << (config.feature_mapping ? "Mapped" : "") << size_tag
                << config.window_size.value();
            break;
        case Algorithm::GpRegression: {
            const char* mean = config.gp_mean == GpMean::Zero    ? "Zero"
                               : config.gp_mean == GpMean::Average ? "Avg"
                                                                   : "OLS";
            out << "GPRegressionGaussianKernel" << mean << "Mean"
                << (config.batch ? "Batch" : "") << size_tag
                << config.window_size.value();
            break;
        }
        case Algorithm::KernelRegression:
            out << "KernelRegression" << (config.batch ? "Batch" : "")
                << (config.high_confidence ? "_HighConf" : "") << size_tag
                << config.window_size.value();
            break;
        case Algorithm::MeanBaseline:
            out << "MeanPredictor";
            break;
    }
    return out.str();
}

LearnerConfig decode_codename(const std::string& codename) {
    LearnerConfig config;
    std::string rest = codename;

    const auto parse_suffix = [&](const char* tag, bool windowed) {
        const std::string t = std::string("_") + tag;
        const auto pos = rest.rfind(t);
        if (pos == std::string::npos || pos + t.size() >= rest.size())
            throw CodenameError("missing " + t + " suffix in: " + codename);
        const std::string value = rest.substr(pos + t.size());
        rest.erase(pos);
        try {
            std::size_t used = 0;
            if (windowed)
                config.window_size = std::stoul(value, &used);
            else
                config.forgetting_factor = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw CodenameError("bad " + t + " value in: " + codename);
        }
    };

    if (rest == "MeanPredictor") {
        config.kind = Algorithm::MeanBaseline;
        return config;
    }

    if (consume_prefix(rest, "BayesianMLE") || codename.rfind("BayesianMAP", 0) == 0) {
        const bool mle = codename.rfind("BayesianMLE", 0) == 0;
        if (!mle) consume_prefix(rest, "BayesianMAP");
        if (consume_prefix(rest, "Forgetting")) {
            config.kind = mle ? Algorithm::MleForgetting : Algorithm::MapForgetting;
            config.feature_mapping = consume_prefix(rest, "Mapped");
            parse_suffix("FF", false);
        } else if (consume_prefix(rest, "Windowed")) {
            config.kind = mle ? Algorithm::MleWindowed : Algorithm::MapWindowed;
            config.feature_mapping = consume_prefix(rest, "Mapped");
            parse_suffix("WS", true);
        } else if (consume_prefix(rest, "Batch")) {
            config.kind = mle ? Algorithm::MleWindowed : Algorithm::MapWindowed;
            config.feature_mapping = consume_prefix(rest, "Mapped");
            config.batch = true;
            parse_suffix("TS", true);
        } else {
            throw CodenameError("unknown parametric variant: " + codename);
        }
        if (!rest.empty())
            throw CodenameError("trailing junk in codename: " + codename);
        config.validate();
        return config;
    }

    if (consume_prefix(rest, "GPRegression")) {
        config.kind = Algorithm::GpRegression;
        consume_prefix(rest, "GaussianKernel");  // optional spelling
        if (consume_prefix(rest, "ZeroMean"))
            config.gp_mean = GpMean::Zero;
        else if (consume_prefix(rest, "AvgMean"))
            config.gp_mean = GpMean::Average;
        else if (consume_prefix(rest, "OLSMean"))
            config.gp_mean = GpMean::Ols;
        else
            throw CodenameError("unknown GP mean function in: " + codename);
        if (consume_prefix(rest, "Batch")) {
            config.batch = true;
            parse_suffix("TS", true);
        } else {
            parse_suffix("WS", true);
        }
        if (!rest.empty())
            throw CodenameError("trailing junk in codename: " + codename);
        config.validate();
        return config;
    }

    if (consume_prefix(rest, "KernelRegression")) {
        config.kind = Algorithm::KernelRegression;
        if (consume_prefix(rest, "Batch")) {
            config.batch = true;
            if (consume_prefix(rest, "_HighConf")) config.high_confidence = true;
            parse_suffix("TS", true);
        } else {
            if (consume_prefix(rest, "_HighConf")) config.high_confidence = true;
            parse_suffix("WS", true);
        }
        if (!rest.empty())
            throw CodenameError("trailing junk in codename: " + codename);
        config.validate();
        return config;
    }

    throw CodenameError("unknown learner codename: " + codename);
}

std::string family_of(const std::string& codename) {
    for (const char* family :
         {"BayesianMLE", "BayesianMAP", "GPRegression", "KernelRegression",
          "MeanPredictor"})
        if (codename.rfind(family, 0) == 0) return family;
    return "Other";
}

std::unique_ptr<core::Learner> make_learner(const LearnerConfig& config) {
    config.validate();
    switch (config.kind) {
        case Algorithm::MleForgetting:
            return std::make_unique<parametric::ForgettingLinearLearner>(
                parametric::Estimator::Mle, config);
        case Algorithm::MapForgetting:
            return std::make_unique<parametric::ForgettingLinearLearner>(
                parametric::Estimator::Map, config);
        case Algorithm::MleWindowed:
            return std::make_unique<parametric::WindowedLinearLearner>(
                parametric::Estimator::Mle, config);
        case Algorithm::MapWindowed:
            return std::make_unique<parametric::WindowedLinearLearner>(
                parametric::Estimator::Map, config);
        case Algorithm::GpRegression:
            return std::make_unique<gp::GpLearner>(config);
        case Algorithm::KernelRegression:
            return std::make_unique<kreg::KernelRegressionLearner>(config);
        case Algorithm::MeanBaseline:
            return std::make_unique<MeanBaselineLearner>();
    }
    throw CodenameError("unhandled learner kind");
}

}  // namespace streamreg::simcli
