// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_SIMCLI_SESSION_HPP
#define STREAMREG_SIMCLI_SESSION_HPP

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "streamreg/evalkit/metrics.hpp"
#include "streamreg/simcli/codenames.hpp"

namespace streamreg::simcli {

struct SessionOptions {
    bool keep_traces = false;
    std::size_t trace_resolution = 96;   // sliding-error-window RMSE
    std::uint64_t seed = 0;              // learner-internal randomness
};

/// Evaluation record of one learner on one stream. `error` is set (and
/// metrics absent) when the learner aborted the session.
struct SessionReport {
    std::string learner;
    std::string dataset;
    std::optional<evalkit::SessionMetrics> metrics;
    std::optional<evalkit::SessionTraces> traces;
    std::optional<std::string> error;
};

/// Plays the stream against a fresh learner: for each item in order,
/// predict, then reveal the target, then let the learner update/tune as
/// its lifecycle dictates. Deterministic apart from the timing fields.
SessionReport run_session(const std::string& codename,
                          const std::vector<core::ObservedPair>& stream,
                          const std::string& dataset_name,
                          const SessionOptions& options = {});

/// Same protocol against a caller-provided learner instance.
SessionReport run_session(core::Learner& learner, const std::string& label,
                          const std::vector<core::ObservedPair>& stream,
                          const std::string& dataset_name,
                          const SessionOptions& options = {});

/// One report per (codename, dataset) pair. Sessions run on `parallelism`
/// threads; the output order is (learner-major, dataset-minor) no matter
/// how execution interleaves. Failures become error reports.
std::vector<SessionReport> run_matrix(
    const std::vector<std::string>& codenames,
    const std::vector<std::pair<std::string,
                                std::vector<core::ObservedPair>>>& datasets,
    std::size_t parallelism, const SessionOptions& options = {});

struct IngestError : std::runtime_error {
    explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

/// Reads a measurement CSV (header, then `dims` feature columns followed
/// by the runtime column). Row order is preserved; it is semantically
/// meaningful for drift. Rejects malformed rows (with line numbers) and,
/// when `reject_negative` is set (the measurement-data contract),
/// negative runtimes. Plain stream CSVs (e.g. noisy synthetic data) are
/// read with the check off.
std::vector<core::ObservedPair> ingest_measurements(
    std::istream& in, std::size_t dims, bool reject_negative = true);

/// JSON (de)serialization of reports; metric keys are the lowercase
/// metric names, undefined metrics serialize as null.
std::string report_to_json(const SessionReport& report);
SessionReport report_from_json(const std::string& json);

enum class GroupBy { Family, Window, Dims, Noise };

struct AggregateRow {
    std::string group;
    std::size_t sessions = 0;
    // mean values; count of sessions that actually defined each metric
    std::map<std::string, double> mean;
    std::map<std::string, std::size_t> defined;
};

/// Arithmetic means of the aggregatable metrics per group. Sessions with
/// errors are skipped; undefined metric values are skipped per metric
/// with the remaining counts reported. Per-item traces are never
/// aggregated.
std::vector<AggregateRow> aggregate(const std::vector<SessionReport>& reports,
                                    GroupBy group_by);

GroupBy parse_group_by(const std::string& key);

}  // namespace streamreg::simcli

#endif  // STREAMREG_SIMCLI_SESSION_HPP
