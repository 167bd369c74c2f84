// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "streamreg/datagen/datagen.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "streamreg/util/rng.hpp"

namespace streamreg::datagen {

using core::DataPoint;
using core::ObservedPair;
using numkit::Vector;

double growth_eval(GrowthKind kind, const DataPoint& x, const Vector& coeffs) {
    assert(x.size() == coeffs.size());
    switch (kind) {
        case GrowthKind::Linear:
            return numkit::dot(x, coeffs);
        case GrowthKind::LogLinear: {
            const double s = numkit::dot(x, coeffs);
            if (s <= 0.0)
                throw DomainError("log-linear growth needs x^T b > 0, got " +
                                  std::to_string(s));
            return s * std::log(s);
        }
        case GrowthKind::QuadV1: {
            double sum = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                sum += coeffs[i] * x[i] * x[i];
            return sum;
        }
        case GrowthKind::QuadV2: {
            const double s = numkit::dot(x, coeffs);
            return s * s;
        }
    }
    throw DomainError("unknown growth kind");
}

namespace {

bool allowed_combo(bool discontinuous, std::size_t dims, GrowthKind g1,
                   GrowthKind g2) {
    if (!discontinuous) {
        if (g1 != g2) return false;
        // With one input variable the two quadratic shapes coincide;
        // only the first is enumerated.
        if (dims == 1 && g1 == GrowthKind::QuadV2) return false;
        return true;
    }
    static constexpr std::array<std::pair<GrowthKind, GrowthKind>, 5> combos{{
        {GrowthKind::Linear, GrowthKind::LogLinear},
        {GrowthKind::Linear, GrowthKind::QuadV1},
        {GrowthKind::Linear, GrowthKind::QuadV2},
        {GrowthKind::LogLinear, GrowthKind::QuadV1},
        {GrowthKind::LogLinear, GrowthKind::QuadV2},
    }};
    for (const auto& [a, b] : combos) {
        if (a != g1 || b != g2) continue;
        if (dims == 1 && b == GrowthKind::QuadV2) return false;
        return true;
    }
    return false;
}

Vector draw_coeffs(util::Rng& rng, std::size_t dims) {
    Vector coeffs(dims);
    for (double& c : coeffs) c = rng.uniform(0.0, 10.0);
    return coeffs;
}

}  // namespace

void DatasetSpec::validate() const {
    if (dims != 1 && dims != 2 && dims != 4)
        throw DomainError("dims must be 1, 2 or 4");
    if (size < 2) throw DomainError("size must be at least 2");
    if (!allowed_combo(discontinuous, dims, growth1, growth2))
        throw DomainError("growth combination not allowed: " +
                          std::to_string(static_cast<int>(growth1)) +
                          std::to_string(static_cast<int>(growth2)));
}

std::vector<ObservedPair> generate(const DatasetSpec& spec) {
    spec.validate();

    std::uint64_t s = spec.seed;
    util::Rng coeff_rng(util::splitmix64(s));
    util::Rng drift_rng(util::splitmix64(s));
    util::Rng stream_rng(util::splitmix64(s));

    // One coefficient vector per region for discontinuous shapes; a
    // continuous shape shares a single vector across the whole space.
    Vector b1 = draw_coeffs(coeff_rng, spec.dims);
    Vector b2 = spec.discontinuous ? draw_coeffs(coeff_rng, spec.dims) : b1;

    const double boundary =
        static_cast<double>(spec.dims) * spec.input_scale / 2.0;
    const double noise_sd = std::sqrt(spec.noise_var);

    std::vector<ObservedPair> stream;
    stream.reserve(spec.size);
    for (std::size_t i = 0; i < spec.size; ++i) {
        if (spec.drifting && i == spec.drift_index()) {
            b1 = draw_coeffs(drift_rng, spec.dims);
            b2 = spec.discontinuous ? draw_coeffs(drift_rng, spec.dims) : b1;
        }
        DataPoint x(spec.dims);
        double sum = 0.0;
        for (double& v : x) {
            v = stream_rng.uniform01() * spec.input_scale;
            sum += v;
        }
        const bool first_region = sum < boundary;
        const double clean = growth_eval(first_region ? spec.growth1 : spec.growth2,
                                         x, first_region ? b1 : b2);
        const double noise = noise_sd * stream_rng.normal();
        stream.push_back({std::move(x), clean + noise});
    }
    return stream;
}

std::vector<DatasetSpec> enumerate_suite(std::uint64_t master_seed) {
    static constexpr std::array<double, 3> scales{10.0, 50.0, 100.0};
    static constexpr std::array<double, 4> noise_vars{0.0, 1.0, 3.0, 5.0};
    static constexpr std::array<GrowthKind, 4> kinds{
        GrowthKind::Linear, GrowthKind::LogLinear, GrowthKind::QuadV1,
        GrowthKind::QuadV2};
    static constexpr std::array<std::pair<GrowthKind, GrowthKind>, 5> combos{{
        {GrowthKind::Linear, GrowthKind::LogLinear},
        {GrowthKind::Linear, GrowthKind::QuadV1},
        {GrowthKind::Linear, GrowthKind::QuadV2},
        {GrowthKind::LogLinear, GrowthKind::QuadV1},
        {GrowthKind::LogLinear, GrowthKind::QuadV2},
    }};

    std::vector<DatasetSpec> suite;
    suite.reserve(576);
    std::uint64_t index = 0;
    for (std::size_t dims : {1u, 2u, 4u}) {
        for (const auto& [discontinuous, drifting] :
             std::array<std::pair<bool, bool>, 4>{
                 {{false, false}, {true, false}, {false, true}, {true, true}}}) {
            for (double scale : scales) {
                for (double noise : noise_vars) {
                    const auto add = [&](GrowthKind g1, GrowthKind g2) {
                        DatasetSpec spec;
                        spec.discontinuous = discontinuous;
                        spec.drifting = drifting;
                        spec.dims = dims;
                        spec.input_scale = scale;
                        spec.noise_var = noise;
                        spec.growth1 = g1;
                        spec.growth2 = g2;
                        spec.seed = util::derive_seed(master_seed, index++);
                        suite.push_back(spec);
                    };
                    if (discontinuous) {
                        for (const auto& [g1, g2] : combos)
                            if (allowed_combo(true, dims, g1, g2)) add(g1, g2);
                    } else {
                        for (GrowthKind g : kinds)
                            if (allowed_combo(false, dims, g, g)) add(g, g);
                    }
                }
            }
        }
    }
    return suite;
}

namespace {

std::string format_number(double v) {
    if (v == static_cast<double>(static_cast<long long>(v)))
        return std::to_string(static_cast<long long>(v));
    std::ostringstream out;
    out << v;
    return out.str();
}

}  // namespace

std::string encode_name(const DatasetSpec& spec) {
    std::ostringstream out;
    out << "SYNTH_" << (spec.discontinuous ? "D" : "ND") << '_'
        << (spec.drifting ? "CD" : "NCD") << '_' << spec.size << '_' << spec.dims
        << '_' << format_number(spec.input_scale) << '_'
        << format_number(spec.noise_var) << '_'
        << static_cast<int>(spec.growth1) << static_cast<int>(spec.growth2);
    return out.str();
}

DatasetSpec decode_name(const std::string& name) {
    std::vector<std::string> tokens;
    std::string token;
    std::istringstream in(name);
    while (std::getline(in, token, '_')) tokens.push_back(token);
    if (tokens.size() != 8 || tokens[0] != "SYNTH")
        throw ParseError("malformed dataset name: " + name);

    DatasetSpec spec;
    if (tokens[1] == "D")
        spec.discontinuous = true;
    else if (tokens[1] == "ND")
        spec.discontinuous = false;
    else
        throw ParseError("expected D or ND in: " + name);
    if (tokens[2] == "CD")
        spec.drifting = true;
    else if (tokens[2] == "NCD")
        spec.drifting = false;
    else
        throw ParseError("expected CD or NCD in: " + name);

    try {
        spec.size = std::stoul(tokens[3]);
        spec.dims = std::stoul(tokens[4]);
        spec.input_scale = std::stod(tokens[5]);
        spec.noise_var = std::stod(tokens[6]);
    } catch (const std::exception&) {
        throw ParseError("bad numeric field in: " + name);
    }
    if (tokens[7].size() != 2 || tokens[7][0] < '1' || tokens[7][0] > '4' ||
        tokens[7][1] < '1' || tokens[7][1] > '4')
        throw ParseError("bad growth digits in: " + name);
    spec.growth1 = static_cast<GrowthKind>(tokens[7][0] - '0');
    spec.growth2 = static_cast<GrowthKind>(tokens[7][1] - '0');
    spec.validate();
    return spec;
}

void write_csv(const std::vector<ObservedPair>& stream, std::ostream& out) {
    assert(!stream.empty());
    const std::size_t d = stream.front().point.size();
    for (std::size_t i = 0; i < d; ++i) out << 'x' << (i + 1) << ',';
    out << "y\n";
    char buf[64];
    for (const ObservedPair& pair : stream) {
        for (double v : pair.point) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g", pair.target);
        out << buf << '\n';
    }
}

std::string to_csv(const std::vector<ObservedPair>& stream) {
    std::ostringstream out;
    write_csv(stream, out);
    return out.str();
}

}  // namespace streamreg::datagen
