// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <json.hpp>

#include "streamreg/simcli/session.hpp"

namespace streamreg::simcli {

using nlohmann::json;

namespace {

json metrics_to_json(const evalkit::SessionMetrics& m) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    return json{{"rmse", m.rmse},        {"rmse_st", opt(m.rmse_st)},
                {"smse", opt(m.smse)},   {"smse_st", opt(m.smse_st)},
                {"icr", m.icr},          {"aiw", m.aiw},
                {"saiw", opt(m.saiw)},   {"apt", m.apt},
                {"hpt", m.hpt},          {"tpt", m.tpt},
                {"aut", m.aut},          {"hut", m.hut},
                {"tut", m.tut},          {"att", m.att},
                {"htt", m.htt},          {"ttt", m.ttt},
                {"tt", m.tt},            {"atpi", m.atpi},
                {"drmax", m.drmax}};
}

evalkit::SessionMetrics metrics_from_json(const json& j) {
    evalkit::SessionMetrics m;
    const auto opt = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return j.at(key).get<double>();
    };
    m.rmse = j.at("rmse").get<double>();
    m.rmse_st = opt("rmse_st");
    m.smse = opt("smse");
    m.smse_st = opt("smse_st");
    m.icr = j.at("icr").get<double>();
    m.aiw = j.at("aiw").get<double>();
    m.saiw = opt("saiw");
    m.apt = j.at("apt").get<double>();
    m.hpt = j.at("hpt").get<double>();
    m.tpt = j.at("tpt").get<double>();
    m.aut = j.at("aut").get<double>();
    m.hut = j.at("hut").get<double>();
    m.tut = j.at("tut").get<double>();
    m.att = j.at("att").get<double>();
    m.htt = j.at("htt").get<double>();
    m.ttt = j.at("ttt").get<double>();
    m.tt = j.at("tt").get<double>();
    m.atpi = j.at("atpi").get<double>();
    m.drmax = j.at("drmax").get<double>();
    return m;
}

}  // namespace

std::string report_to_json(const SessionReport& report) {
    json j{{"learner", report.learner}, {"dataset", report.dataset}};
    if (report.error) {
        j["error"] = *report.error;
        return j.dump(2);
    }
    j["metrics"] = metrics_to_json(*report.metrics);
    if (report.traces) {
        const evalkit::SessionTraces& t = *report.traces;
        j["traces"] = json{{"target", t.target},
                           {"lower", t.lower},
                           {"point", t.point},
                           {"upper", t.upper},
                           {"phase", std::string(t.phase.begin(), t.phase.end())},
                           {"rmse_window", t.rmse_window},
                           {"predict_ms", t.predict_ms},
                           {"update_ms", t.update_ms},
                           {"tune_ms", t.tune_ms}};
    }
    return j.dump(2);
}

SessionReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    SessionReport report;
    report.learner = j.at("learner").get<std::string>();
    report.dataset = j.at("dataset").get<std::string>();
    if (j.contains("error")) {
        report.error = j.at("error").get<std::string>();
        return report;
    }
    report.metrics = metrics_from_json(j.at("metrics"));
    if (j.contains("traces")) {
        const json& t = j.at("traces");
        evalkit::SessionTraces traces;
        traces.target = t.at("target").get<std::vector<double>>();
        traces.lower = t.at("lower").get<std::vector<double>>();
        traces.point = t.at("point").get<std::vector<double>>();
        traces.upper = t.at("upper").get<std::vector<double>>();
        const std::string phase = t.at("phase").get<std::string>();
        traces.phase.assign(phase.begin(), phase.end());
        traces.rmse_window = t.at("rmse_window").get<std::vector<double>>();
        traces.predict_ms = t.at("predict_ms").get<std::vector<double>>();
        traces.update_ms = t.at("update_ms").get<std::vector<double>>();
        traces.tune_ms = t.at("tune_ms").get<std::vector<double>>();
        report.traces = std::move(traces);
    }
    return report;
}

}  // namespace streamreg::simcli
