// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/evalkit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "streamreg/evalkit/prequential.hpp"

namespace streamreg::evalkit {

char phase_code(core::Phase phase) {
    switch (phase) {
        case core::Phase::ColdStart: return 'C';
        case core::Phase::Stable: return 'S';
        case core::Phase::HighError: return 'H';
        case core::Phase::Tune: return 'T';
    }
    return '?';
}

namespace {

double target_mean(const std::vector<ItemRecord>& records) {
    double sum = 0.0;
    for (const ItemRecord& r : records) sum += r.target;
    return sum / static_cast<double>(records.size());
}

double target_variance(const std::vector<ItemRecord>& records) {
    const double mean = target_mean(records);
    double sum_sq = 0.0;
    for (const ItemRecord& r : records) {
        const double d = r.target - mean;
        sum_sq += d * d;
    }
    return sum_sq / static_cast<double>(records.size());
}

}  // namespace

void compute_error_metrics(const std::vector<ItemRecord>& records,
                           SessionMetrics& out) {
    assert(records.size() >= 2);
    double sum_sq = 0.0;
    double sum_sq_stable = 0.0;
    std::size_t n_stable = 0;
    for (const ItemRecord& r : records) {
        const double err = r.triple.point - r.target;
        sum_sq += err * err;
        if (r.phase == core::Phase::Stable) {
            sum_sq_stable += err * err;
            ++n_stable;
        }
    }
    const double n = static_cast<double>(records.size());
    const double mse = sum_sq / n;
    out.rmse = std::sqrt(mse);

    std::optional<double> mse_st;
    if (n_stable > 0) {
        mse_st = sum_sq_stable / static_cast<double>(n_stable);
        out.rmse_st = std::sqrt(*mse_st);
    }

    const double var = target_variance(records);
    if (var > 0.0) {
        out.smse = mse / var;
        if (mse_st) out.smse_st = *mse_st / var;
    }
}

void compute_bound_metrics(const std::vector<ItemRecord>& records,
                           SessionMetrics& out) {
    assert(!records.empty());
    std::size_t contained = 0;
    double width_sum = 0.0;
    for (const ItemRecord& r : records) {
        if (r.triple.contains(r.target)) ++contained;
        width_sum += r.triple.width();
    }
    const double n = static_cast<double>(records.size());
    out.icr = static_cast<double>(contained) / n;
    out.aiw = width_sum / n;
    const double mean = target_mean(records);
    if (mean != 0.0) out.saiw = out.aiw / mean;
}

void compute_time_metrics(const std::vector<ItemRecord>& records,
                          SessionMetrics& out) {
    assert(!records.empty());
    std::size_t n_updates = 0;
    std::size_t n_tunes = 0;
    for (const ItemRecord& r : records) {
        out.tpt += r.predict_ms;
        out.hpt = std::max(out.hpt, r.predict_ms);
        if (r.updated) {
            out.tut += r.update_ms;
            out.hut = std::max(out.hut, r.update_ms);
            ++n_updates;
        }
        if (r.tuned) {
            out.ttt += r.tune_ms;
            out.htt = std::max(out.htt, r.tune_ms);
            ++n_tunes;
        }
    }
    const double n = static_cast<double>(records.size());
    out.apt = out.tpt / n;
    out.aut = n_updates > 0 ? out.tut / static_cast<double>(n_updates) : 0.0;
    out.att = n_tunes > 0 ? out.ttt / static_cast<double>(n_tunes) : 0.0;
    out.tt = out.tpt + out.tut + out.ttt;
    out.atpi = out.tt / n;
    out.drmax = out.atpi > 0.0 ? 1.0 / out.atpi : 0.0;
}

SessionMetrics compute_metrics(const std::vector<ItemRecord>& records) {
    SessionMetrics out;
    compute_error_metrics(records, out);
    compute_bound_metrics(records, out);
    compute_time_metrics(records, out);
    return out;
}

std::vector<double> rmse_window_trace(const std::vector<ItemRecord>& records,
                                      std::size_t resolution) {
    std::vector<double> trace;
    trace.reserve(records.size());
    auto acc = PrequentialAccumulator::window(resolution);
    for (const ItemRecord& r : records) {
        const double err = r.triple.point - r.target;
        acc.observe(err * err);
        trace.push_back(std::sqrt(acc.mean()));
    }
    return trace;
}

}  // namespace streamreg::evalkit
