// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_EVALKIT_METRICS_HPP
#define STREAMREG_EVALKIT_METRICS_HPP

#include <optional>
#include <vector>

#include "streamreg/core/lifecycle.hpp"
#include "streamreg/core/types.hpp"

namespace streamreg::evalkit {

/// Everything the session runner records about one stream item.
struct ItemRecord {
    double target = 0.0;
    core::PredictionTriple triple;
    core::Phase phase = core::Phase::ColdStart;   // phase at prediction time
    double predict_ms = 0.0;
    double update_ms = 0.0;
    double tune_ms = 0.0;
    bool updated = false;
    bool tuned = false;
};

/// Per-(learner, dataset) summary. SMSE-family values are absent when
/// the target variance (or mean, for SAIW) degenerates; aggregation
/// skips the missing entries instead of aborting.
struct SessionMetrics {
    // accuracy
    double rmse = 0.0;
    std::optional<double> rmse_st;
    std::optional<double> smse;
    std::optional<double> smse_st;
    // prediction bounds
    double icr = 0.0;
    double aiw = 0.0;
    std::optional<double> saiw;
    // time, all in ms
    double apt = 0.0, hpt = 0.0, tpt = 0.0;
    double aut = 0.0, hut = 0.0, tut = 0.0;
    double att = 0.0, htt = 0.0, ttt = 0.0;
    double tt = 0.0;
    double atpi = 0.0;
    double drmax = 0.0;   // items per ms, 1 / atpi
};

/// Per-item traces kept only when requested (they must not be averaged
/// across sessions).
struct SessionTraces {
    std::vector<double> target;
    std::vector<double> lower, point, upper;
    std::vector<char> phase;          // C/S/H/T codes
    std::vector<double> rmse_window;  // sliding-error-window RMSE
    std::vector<double> predict_ms, update_ms, tune_ms;
};

char phase_code(core::Phase phase);

/// RMSE / RMSE_ST / SMSE / SMSE_ST over completed records. Stable-phase
/// restriction uses the recorded phase at prediction time.
void compute_error_metrics(const std::vector<ItemRecord>& records,
                           SessionMetrics& out);

/// ICR / AIW / SAIW.
void compute_bound_metrics(const std::vector<ItemRecord>& records,
                           SessionMetrics& out);

/// Per-operation-class averages/maxima/totals plus ATPI and DRmax.
void compute_time_metrics(const std::vector<ItemRecord>& records,
                          SessionMetrics& out);

SessionMetrics compute_metrics(const std::vector<ItemRecord>& records);

/// Sliding-error-window RMSE trace at the given resolution.
std::vector<double> rmse_window_trace(const std::vector<ItemRecord>& records,
                                      std::size_t resolution);

}  // namespace streamreg::evalkit

#endif  // STREAMREG_EVALKIT_METRICS_HPP
