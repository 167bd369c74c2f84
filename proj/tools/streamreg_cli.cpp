// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line harness: synthetic dataset generation, single stream
// sessions, (learner x dataset) matrices, measurement-CSV ingestion and
// report aggregation.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "streamreg/datagen/datagen.hpp"
#include "streamreg/simcli/session.hpp"

namespace fs = std::filesystem;
using namespace streamreg;

namespace {

std::vector<core::ObservedPair> load_stream(const std::string& dataset,
                                            std::uint64_t seed) {
    if (dataset.rfind("SYNTH_", 0) == 0) {
        datagen::DatasetSpec spec = datagen::decode_name(dataset);
        spec.seed = seed;
        return datagen::generate(spec);
    }
    std::ifstream in(dataset);
    if (!in) throw std::runtime_error("cannot open dataset file: " + dataset);
    std::string header;
    std::getline(in, header);
    const std::size_t dims = std::count(header.begin(), header.end(), ',');
    in.seekg(0);
    return simcli::ingest_measurements(in, dims, /*reject_negative=*/false);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

std::string sanitize(std::string name) {
    for (char& c : name)
        if (c == '/' || c == ' ') c = '-';
    return name;
}

int cmd_gen(const std::string& name, bool suite, const std::string& out_dir,
            std::uint64_t seed) {
    if (suite) {
        fs::create_directories(out_dir);
        const auto specs = datagen::enumerate_suite(seed);
        for (const auto& spec : specs) {
            const std::string file =
                (fs::path(out_dir) / (datagen::encode_name(spec) + ".csv"))
                    .string();
            write_text(file, datagen::to_csv(datagen::generate(spec)));
        }
        std::cout << "wrote " << specs.size() << " datasets to " << out_dir
                  << "\n";
        return 0;
    }
    datagen::DatasetSpec spec = datagen::decode_name(name);
    spec.seed = seed;
    const std::string csv = datagen::to_csv(datagen::generate(spec));
    if (out_dir.empty()) {
        std::cout << csv;
    } else {
        fs::create_directories(out_dir);
        const std::string file =
            (fs::path(out_dir) / (datagen::encode_name(spec) + ".csv")).string();
        write_text(file, csv);
        std::cout << "wrote " << file << "\n";
    }
    return 0;
}

int cmd_run(const std::string& learner, const std::string& dataset,
            std::uint64_t seed, bool trace, std::size_t resolution,
            const std::string& out) {
    simcli::SessionOptions options;
    options.keep_traces = trace;
    options.trace_resolution = resolution;
    options.seed = seed;
    const auto stream = load_stream(dataset, seed);
    const std::string dataset_name =
        dataset.rfind("SYNTH_", 0) == 0 ? dataset
                                        : fs::path(dataset).stem().string();
    const auto report =
        simcli::run_session(learner, stream, dataset_name, options);
    const std::string json = simcli::report_to_json(report);
    if (out.empty())
        std::cout << json << "\n";
    else
        write_text(out, json);
    return report.error ? 1 : 0;
}

int cmd_matrix(const std::string& learners_file,
               const std::vector<std::string>& dataset_names, bool suite,
               std::size_t max_datasets, std::size_t parallel,
               std::uint64_t seed, const std::string& out_dir) {
    std::vector<std::string> codenames;
    std::ifstream in(learners_file);
    if (!in)
        throw std::runtime_error("cannot open learners file: " + learners_file);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') codenames.push_back(line);
    }

    std::vector<std::pair<std::string, std::vector<core::ObservedPair>>>
        datasets;
    if (suite) {
        for (const auto& spec : datagen::enumerate_suite(seed)) {
            if (max_datasets > 0 && datasets.size() >= max_datasets) break;
            datasets.push_back(
                {datagen::encode_name(spec), datagen::generate(spec)});
        }
    } else {
        for (const std::string& name : dataset_names)
            datasets.push_back({name, load_stream(name, seed)});
    }

    simcli::SessionOptions options;
    options.seed = seed;
    const auto reports =
        simcli::run_matrix(codenames, datasets, parallel, options);

    fs::create_directories(out_dir);
    std::size_t failures = 0;
    for (const auto& report : reports) {
        const std::string file =
            (fs::path(out_dir) /
             (sanitize(report.learner) + "__" + sanitize(report.dataset) +
              ".json"))
                .string();
        write_text(file, simcli::report_to_json(report));
        if (report.error) ++failures;
    }
    std::cout << "wrote " << reports.size() << " reports to " << out_dir;
    if (failures > 0) std::cout << " (" << failures << " failed sessions)";
    std::cout << "\n";
    return 0;
}

int cmd_ingest(const std::string& input, std::size_t dims,
               const std::string& out) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open input: " + input);
    const auto stream = simcli::ingest_measurements(in, dims);
    const std::string csv = datagen::to_csv(stream);
    if (out.empty())
        std::cout << csv;
    else
        write_text(out, csv);
    std::cerr << "ingested " << stream.size() << " rows, " << dims
              << " feature(s)\n";
    return 0;
}

int cmd_aggregate(const std::string& reports_dir, const std::string& group_key,
                  const std::string& out) {
    std::vector<simcli::SessionReport> reports;
    for (const auto& entry : fs::directory_iterator(reports_dir)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        reports.push_back(simcli::report_from_json(text));
    }
    const auto rows =
        simcli::aggregate(reports, simcli::parse_group_by(group_key));

    std::ostringstream table;
    table << "group,sessions,smse,smse_st,icr,saiw,atpi,drmax\n";
    for (const auto& row : rows) {
        const auto cell = [&](const char* key) -> std::string {
            const auto it = row.mean.find(key);
            return it == row.mean.end() ? "" : std::to_string(it->second);
        };
        table << row.group << ',' << row.sessions << ',' << cell("smse") << ','
              << cell("smse_st") << ',' << cell("icr") << ',' << cell("saiw")
              << ',' << cell("atpi") << ',' << cell("drmax") << "\n";
    }
    if (out.empty())
        std::cout << table.str();
    else
        write_text(out, table.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online regression learners on drifting streams"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate synthetic dataset CSVs");
    std::string gen_name;
    bool gen_suite = false;
    std::string gen_out;
    std::uint64_t gen_seed = 1;
    gen->add_option("--name", gen_name, "dataset name (SYNTH_...)");
    gen->add_flag("--suite", gen_suite, "emit the full 576-dataset suite");
    gen->add_option("--out", gen_out, "output directory (or stdout)");
    gen->add_option("--seed", gen_seed, "master seed");

    // run
    auto* run = app.add_subcommand("run", "run one learner over one stream");
    std::string run_learner, run_dataset, run_out;
    std::uint64_t run_seed = 1;
    bool run_trace = false;
    std::size_t run_resolution = 96;
    run->add_option("--learner", run_learner, "learner codename")->required();
    run->add_option("--dataset", run_dataset, "CSV path or SYNTH_ name")
        ->required();
    run->add_option("--seed", run_seed, "seed (dataset + learner)");
    run->add_flag("--trace", run_trace, "keep per-item traces");
    run->add_option("--resolution", run_resolution,
                    "sliding-error-window resolution");
    run->add_option("--out", run_out, "report file (or stdout)");

    // matrix
    auto* matrix =
        app.add_subcommand("matrix", "run a learner x dataset matrix");
    std::string mat_learners, mat_out = "reports";
    std::vector<std::string> mat_datasets;
    bool mat_suite = false;
    std::size_t mat_parallel = 1;
    std::size_t mat_max = 0;
    std::uint64_t mat_seed = 1;
    matrix->add_option("--learners", mat_learners,
                       "file with one codename per line")
        ->required();
    matrix->add_flag("--suite", mat_suite, "use the 576-dataset suite");
    matrix->add_option("--max", mat_max, "cap the suite size");
    matrix->add_option("--datasets", mat_datasets, "explicit datasets");
    matrix->add_option("--parallel", mat_parallel, "worker threads");
    matrix->add_option("--seed", mat_seed, "master seed");
    matrix->add_option("--out", mat_out, "report directory");

    // ingest
    auto* ingest =
        app.add_subcommand("ingest", "validate a measurement CSV");
    std::string ing_input, ing_out;
    std::size_t ing_dims = 1;
    ingest->add_option("--input", ing_input, "measurement CSV")->required();
    ingest->add_option("--dims", ing_dims, "feature column count")->required();
    ingest->add_option("--out", ing_out, "normalized CSV output");

    // aggregate
    auto* agg = app.add_subcommand("aggregate", "aggregate session reports");
    std::string agg_dir, agg_out;
    std::string agg_group = "family";
    agg->add_option("--reports", agg_dir, "directory of report JSONs")
        ->required();
    agg->add_option("--group-by", agg_group, "family|window|dims|noise");
    agg->add_option("--out", agg_out, "CSV output (or stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_name, gen_suite, gen_out, gen_seed);
        if (run->parsed())
            return cmd_run(run_learner, run_dataset, run_seed, run_trace,
                           run_resolution, run_out);
        if (matrix->parsed())
            return cmd_matrix(mat_learners, mat_datasets, mat_suite, mat_max,
                              mat_parallel, mat_seed, mat_out);
        if (ingest->parsed()) return cmd_ingest(ing_input, ing_dims, ing_out);
        if (agg->parsed()) return cmd_aggregate(agg_dir, agg_group, agg_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
