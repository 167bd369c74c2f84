// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/simcli/session.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "streamreg/datagen/datagen.hpp"

namespace streamreg::simcli {

using core::ObservedPair;
using evalkit::ItemRecord;

SessionReport run_session(const std::string& codename,
                          const std::vector<ObservedPair>& stream,
                          const std::string& dataset_name,
                          const SessionOptions& options) {
    try {
        auto learner = make_learner(codename, options.seed);
        return run_session(*learner, codename, stream, dataset_name, options);
    } catch (const std::exception& e) {
        SessionReport report;
        report.learner = codename;
        report.dataset = dataset_name;
        report.error = e.what();
        return report;
    }
}

SessionReport run_session(core::Learner& learner, const std::string& label,
                          const std::vector<ObservedPair>& stream,
                          const std::string& dataset_name,
                          const SessionOptions& options) {
    SessionReport report;
    report.learner = label;
    report.dataset = dataset_name;
    try {
        if (stream.empty()) throw std::invalid_argument("empty stream");

        std::vector<ItemRecord> records;
        records.reserve(stream.size());
        for (const ObservedPair& pair : stream) {
            ItemRecord record;
            record.target = pair.target;
            record.phase = learner.phase();

            const core::StopwatchMs predict_clock;
            record.triple = learner.predict(pair.point);
            record.predict_ms = predict_clock.elapsed();

            // Only now is the target revealed to the learner.
            const core::LearnOutcome outcome = learner.learn(pair, record.triple);
            record.updated = outcome.updated;
            record.tuned = outcome.tuned;
            record.update_ms = outcome.update_ms;
            record.tune_ms = outcome.tune_ms;
            records.push_back(record);
        }

        report.metrics = evalkit::compute_metrics(records);
        if (options.keep_traces) {
            evalkit::SessionTraces traces;
            traces.rmse_window =
                evalkit::rmse_window_trace(records, options.trace_resolution);
            for (const ItemRecord& r : records) {
                traces.target.push_back(r.target);
                traces.lower.push_back(r.triple.lower);
                traces.point.push_back(r.triple.point);
                traces.upper.push_back(r.triple.upper);
                traces.phase.push_back(evalkit::phase_code(r.phase));
                traces.predict_ms.push_back(r.predict_ms);
                traces.update_ms.push_back(r.update_ms);
                traces.tune_ms.push_back(r.tune_ms);
            }
            report.traces = std::move(traces);
        }
    } catch (const std::exception& e) {
        report.metrics.reset();
        report.traces.reset();
        report.error = e.what();
    }
    return report;
}

std::vector<SessionReport> run_matrix(
    const std::vector<std::string>& codenames,
    const std::vector<std::pair<std::string, std::vector<ObservedPair>>>&
        datasets,
    std::size_t parallelism, const SessionOptions& options) {
    const std::size_t total = codenames.size() * datasets.size();
    std::vector<SessionReport> reports(total);
    if (total == 0) return reports;
    parallelism = std::max<std::size_t>(1, parallelism);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t job = next.fetch_add(1); job < total;
             job = next.fetch_add(1)) {
            const std::size_t learner_idx = job / datasets.size();
            const std::size_t dataset_idx = job % datasets.size();
            const auto& [name, stream] = datasets[dataset_idx];
            reports[job] =
                run_session(codenames[learner_idx], stream, name, options);
        }
    };

    if (parallelism == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(parallelism);
        for (std::size_t i = 0; i < parallelism; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return reports;
}

std::vector<ObservedPair> ingest_measurements(std::istream& in,
                                              std::size_t dims,
                                              bool reject_negative) {
    std::string line;
    if (!std::getline(in, line)) throw IngestError("missing header line");

    std::vector<ObservedPair> stream;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string field;
        ObservedPair pair;
        pair.point.reserve(dims);
        std::size_t column = 0;
        while (std::getline(fields, field, ',')) {
            double value;
            try {
                std::size_t used = 0;
                value = std::stod(field, &used);
                if (used != field.size()) throw std::invalid_argument(field);
            } catch (const std::exception&) {
                throw IngestError("line " + std::to_string(line_no) +
                                  ": bad numeric field '" + field + "'");
            }
            if (column < dims)
                pair.point.push_back(value);
            else
                pair.target = value;
            ++column;
        }
        if (column != dims + 1)
            throw IngestError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(dims + 1) + " columns, got " +
                              std::to_string(column));
        if (reject_negative && pair.target < 0.0)
            throw IngestError("line " + std::to_string(line_no) +
                              ": negative runtime " +
                              std::to_string(pair.target));
        stream.push_back(std::move(pair));
    }
    return stream;
}

GroupBy parse_group_by(const std::string& key) {
    if (key == "family") return GroupBy::Family;
    if (key == "window") return GroupBy::Window;
    if (key == "dims") return GroupBy::Dims;
    if (key == "noise") return GroupBy::Noise;
    throw std::invalid_argument("unknown group-by key: " + key);
}

namespace {

std::string group_key(const SessionReport& report, GroupBy group_by) {
    switch (group_by) {
        case GroupBy::Family:
            return family_of(report.learner);
        case GroupBy::Window: {
            for (const char* tag : {"_WS", "_TS"}) {
                const auto pos = report.learner.rfind(tag);
                if (pos != std::string::npos)
                    return report.learner.substr(pos + 1);
            }
            return "none";
        }
        case GroupBy::Dims: {
            const auto spec = datagen::decode_name(report.dataset);
            return "dims=" + std::to_string(spec.dims);
        }
        case GroupBy::Noise: {
            const auto spec = datagen::decode_name(report.dataset);
            std::ostringstream out;
            out << "noise=" << spec.noise_var;
            return out.str();
        }
    }
    return "?";
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<SessionReport>& reports,
                                    GroupBy group_by) {
    struct Sums {
        std::size_t sessions = 0;
        std::map<std::string, double> sum;
        std::map<std::string, std::size_t> defined;
    };
    std::map<std::string, Sums> groups;

    for (const SessionReport& report : reports) {
        if (!report.metrics) continue;
        Sums& sums = groups[group_key(report, group_by)];
        ++sums.sessions;
        const evalkit::SessionMetrics& m = *report.metrics;
        const auto add = [&](const char* key, double value) {
            sums.sum[key] += value;
            ++sums.defined[key];
        };
        const auto add_opt = [&](const char* key,
                                 const std::optional<double>& value) {
            if (value) add(key, *value);
        };
        add_opt("smse", m.smse);
        add_opt("smse_st", m.smse_st);
        add("icr", m.icr);
        add_opt("saiw", m.saiw);
        add("apt", m.apt);
        add("aut", m.aut);
        add("att", m.att);
        add("atpi", m.atpi);
        add("drmax", m.drmax);
    }

    std::vector<AggregateRow> rows;
    for (const auto& [key, sums] : groups) {
        AggregateRow row;
        row.group = key;
        row.sessions = sums.sessions;
        row.defined = sums.defined;
        for (const auto& [metric, total] : sums.sum)
            row.mean[metric] = total / static_cast<double>(sums.defined.at(metric));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace streamreg::simcli
