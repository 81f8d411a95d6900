// Copyright 2026 The qdisturb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * File formats: parsing of likelihood and counts documents (JSON, plus CSV
 * for counts) and rendering of every result document as JSON, CSV, or a
 * fixed-width human-readable table.
 *
 * Likelihood document:
 *   { "dimension": d, "outcomes": [ { "label": "...", "p_given_a": [...] } ] }
 * Counts document (JSON):
 *   { "dimension": d, "outcomes": [ { "label": "...", "shift_counts": [...] } ] }
 * Counts document (CSV): header "label,k,count"; duplicate (label, k) rows
 * aggregate on load; the dimension is max k + 1 unless a hint is given.
 *
 * Unknown JSON keys are ignored. JSON numbers render in the shortest form
 * that parses back to the identical double; CSV uses 17 significant digits.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdisturb/channel.hpp"
#include "qdisturb/oracle.hpp"
#include "qdisturb/tradeoff.hpp"

namespace qdisturb::io {

enum class Format { Json, Csv, Table };

Format parse_format(const std::string& name);

struct LikelihoodDocument {
    Dimension d;
    std::vector<OutcomeLikelihood<double>> outcomes;
};

struct CountsDocument {
    Dimension d;
    std::vector<channel::DisturbanceCounts> outcomes;
};

LikelihoodDocument parse_likelihood_document(const std::string& text);

/// Accepts JSON or CSV (sniffed on the first non-space byte). The dimension
/// hint is only consulted for CSV, where it pins trailing shifts that were
/// never observed.
CountsDocument parse_counts_document(const std::string& text,
                                     std::optional<Index> dimension_hint = std::nullopt);

/// FNV-1a 64-bit fingerprint of the raw input bytes, e.g. "fnv1a64:a1b2...".
std::string fnv1a64_digest(std::string_view bytes);

/// One expanded outcome: coefficients, their squared moduli, and the
/// normalized disturbance distribution.
struct SpectrumRow {
    std::string label;
    Eigen::VectorXcd coeffs;
    Eigen::VectorXd abs_squared;
    Eigen::VectorXd distribution;
};

std::string render_expand(Index d, const std::vector<SpectrumRow>& rows, Format format);

std::string render_bound(Index d, const std::vector<BoundReport<double>>& reports, Format format);

struct CountsMeta {
    std::uint64_t seed;
    std::int64_t shots;
};

std::string render_counts(Index d, const std::vector<channel::DisturbanceCounts>& counts,
                          Format format, std::optional<CountsMeta> meta = std::nullopt);

std::string render_leak_report(const channel::LeakReport& report, const std::string& input_digest,
                               Format format);

struct VerifyMeta {
    std::vector<Index> dims;
    Index count_per_dim;
    std::uint64_t seed;
    double tolerance;
    std::string kind;
};

std::string render_verification(const oracle::VerificationReport& report, const VerifyMeta& meta,
                                Format format);

} // namespace qdisturb::io
