// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_DATAGEN_DATAGEN_HPP
#define STREAMREG_DATAGEN_DATAGEN_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "streamreg/core/types.hpp"

namespace streamreg::datagen {

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Target growth shapes; codes match the digits used in dataset names.
enum class GrowthKind : int {
    Linear = 1,     // x^T b
    LogLinear = 2,  // s * ln s with s = x^T b
    QuadV1 = 3,     // (x^2)^T b
    QuadV2 = 4,     // (x^T b)^2
};

double growth_eval(GrowthKind kind, const core::DataPoint& x,
                   const numkit::Vector& coeffs);

/// One synthetic stream: 2000 items by default, an optional target-shape
/// discontinuity across the input-sum midpoint, and an optional abrupt
/// coefficient redraw halfway through the stream.
struct DatasetSpec {
    bool discontinuous = false;    // D vs ND
    bool drifting = false;         // CD vs NCD
    std::size_t size = 2000;
    std::size_t dims = 1;          // 1, 2 or 4
    double input_scale = 10.0;     // 10, 50 or 100
    double noise_var = 0.0;        // 0, 1, 3 or 5
    GrowthKind growth1 = GrowthKind::Linear;
    GrowthKind growth2 = GrowthKind::Linear;
    std::uint64_t seed = 0;

    /// Item index where the coefficient redraw takes effect (size / 2).
    std::size_t drift_index() const { return size / 2; }

    void validate() const;
};

/// Deterministic stream generation: inputs uniform in (0, input_scale),
/// region selection by sum(x) against d * input_scale / 2 (ties go to
/// the second region), additive Gaussian noise. Bit-identical across
/// runs for a fixed spec.
std::vector<core::ObservedPair> generate(const DatasetSpec& spec);

/// The full benchmark enumeration: 576 specs in the canonical bucket
/// order (dims major, then D|ND x CD|NCD as published), with per-spec
/// seeds derived from the master seed.
std::vector<DatasetSpec> enumerate_suite(std::uint64_t master_seed);

/// SYNTH_(D|ND)_(CD|NCD)_SIZE_INPDIM_INPSCALE_NOISEVAR_G1G2
std::string encode_name(const DatasetSpec& spec);
DatasetSpec decode_name(const std::string& name);

/// CSV with header "x1,...,xd,y", one row per item in stream order, full
/// double precision.
void write_csv(const std::vector<core::ObservedPair>& stream,
               std::ostream& out);
std::string to_csv(const std::vector<core::ObservedPair>& stream);

}  // namespace streamreg::datagen

#endif  // STREAMREG_DATAGEN_DATAGEN_HPP
