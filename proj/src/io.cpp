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

#include "qdisturb/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <unordered_set>

#include "qdisturb/version.hpp"

#include <json.hpp>

namespace qdisturb::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

/// 17 significant digits: enough to reparse the identical double.
std::string full_precision(double value) {
    std::ostringstream out;
    out << std::setprecision(17) << value;
    return out.str();
}

std::string fixed_digits(double value, int digits) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << value;
    return out.str();
}

json parse_json_or_throw(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::runtime_error(what + ": not valid JSON (" + err.what() + ")");
    }
}

std::int64_t require_int(const json& value, const std::string& what) {
    if (!value.is_number_integer()) {
        throw std::runtime_error(what + " must be an integer");
    }
    return value.get<std::int64_t>();
}

ordered_json header_json() {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    return j;
}

} // namespace

Format parse_format(const std::string& name) {
    const std::string key = lower(trim(name));
    if (key == "json") return Format::Json;
    if (key == "csv") return Format::Csv;
    if (key == "table") return Format::Table;
    throw std::runtime_error("unknown format '" + name + "' (expected json, csv, or table)");
}

LikelihoodDocument parse_likelihood_document(const std::string& text) {
    const json doc = parse_json_or_throw(text, "likelihood document");
    if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("outcomes")) {
        throw std::runtime_error(
            "likelihood document: expected an object with 'dimension' and 'outcomes'");
    }
    const Dimension d(require_int(doc["dimension"], "likelihood document: 'dimension'"));
    if (!doc["outcomes"].is_array() || doc["outcomes"].empty()) {
        throw std::runtime_error("likelihood document: 'outcomes' must be a non-empty array");
    }

    std::vector<OutcomeLikelihood<double>> outcomes;
    std::unordered_set<std::string> seen;
    for (const auto& entry : doc["outcomes"]) {
        if (!entry.is_object() || !entry.contains("label") || !entry.contains("p_given_a")) {
            throw std::runtime_error(
                "likelihood document: each outcome needs 'label' and 'p_given_a'");
        }
        if (!entry["label"].is_string()) {
            throw std::runtime_error("likelihood document: 'label' must be a string");
        }
        const std::string label = entry["label"].get<std::string>();
        if (!seen.insert(label).second) {
            throw std::runtime_error("likelihood document: duplicate outcome label '" + label + "'");
        }
        const auto& probs_json = entry["p_given_a"];
        if (!probs_json.is_array() || static_cast<Index>(probs_json.size()) != d.value()) {
            throw std::runtime_error("likelihood document: 'p_given_a' for outcome '" + label +
                                     "' must be an array of length " + std::to_string(d.value()));
        }
        RealVector<double> probs(d.value());
        for (Index a = 0; a < d.value(); ++a) {
            const auto& v = probs_json[static_cast<std::size_t>(a)];
            if (!v.is_number()) {
                throw std::runtime_error("likelihood document: non-numeric probability in outcome '" +
                                         label + "'");
            }
            probs[a] = v.get<double>();
        }
        outcomes.emplace_back(std::move(probs), label); // entry validation happens here
    }
    return {d, std::move(outcomes)};
}

namespace {

CountsDocument parse_counts_json(const std::string& text) {
    const json doc = parse_json_or_throw(text, "counts document");
    if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("outcomes")) {
        throw std::runtime_error(
            "counts document: expected an object with 'dimension' and 'outcomes'");
    }
    const Dimension d(require_int(doc["dimension"], "counts document: 'dimension'"));
    if (!doc["outcomes"].is_array() || doc["outcomes"].empty()) {
        throw std::runtime_error("counts document: 'outcomes' must be a non-empty array");
    }

    std::vector<channel::DisturbanceCounts> outcomes;
    std::unordered_set<std::string> seen;
    for (const auto& entry : doc["outcomes"]) {
        if (!entry.is_object() || !entry.contains("label") || !entry.contains("shift_counts")) {
            throw std::runtime_error(
                "counts document: each outcome needs 'label' and 'shift_counts'");
        }
        if (!entry["label"].is_string()) {
            throw std::runtime_error("counts document: 'label' must be a string");
        }
        const std::string label = entry["label"].get<std::string>();
        if (!seen.insert(label).second) {
            throw std::runtime_error("counts document: duplicate outcome label '" + label + "'");
        }
        const auto& counts_json = entry["shift_counts"];
        if (!counts_json.is_array() || static_cast<Index>(counts_json.size()) != d.value()) {
            throw std::runtime_error("counts document: 'shift_counts' for outcome '" + label +
                                     "' must be an array of length " + std::to_string(d.value()));
        }
        channel::DisturbanceCounts counts{label, {}};
        counts.shift_counts.reserve(static_cast<std::size_t>(d.value()));
        for (const auto& v : counts_json) {
            const std::int64_t n = require_int(v, "counts document: shift count");
            if (n < 0) {
                throw std::runtime_error("counts document: negative count for outcome '" + label +
                                         "'");
            }
            counts.shift_counts.push_back(n);
        }
        if (counts.total() < 1) {
            throw std::runtime_error("counts document: outcome '" + label +
                                     "' has no observations");
        }
        outcomes.push_back(std::move(counts));
    }
    return {d, std::move(outcomes)};
}

std::int64_t parse_int_field(const std::string& field, const std::string& what, std::size_t line) {
    std::int64_t value = 0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last) {
        throw std::runtime_error("counts CSV line " + std::to_string(line) + ": '" + field +
                                 "' is not a valid " + what);
    }
    return value;
}

CountsDocument parse_counts_csv(const std::string& text, std::optional<Index> dimension_hint) {
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;

    // header
    if (!std::getline(stream, line)) {
        throw std::runtime_error("counts CSV: empty input");
    }
    ++line_no;
    {
        std::string header = lower(trim(line));
        header.erase(std::remove_if(header.begin(), header.end(),
                                    [](unsigned char c) { return std::isspace(c); }),
                     header.end());
        if (header != "label,k,count") {
            throw std::runtime_error("counts CSV: expected header 'label,k,count', got '" +
                                     trim(line) + "'");
        }
    }

    std::vector<std::string> label_order;
    std::map<std::string, std::map<Index, std::int64_t>> table;
    Index max_shift = -1;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty()) {
            continue;
        }
        const auto first_comma = row.find(',');
        const auto second_comma = first_comma == std::string::npos
                                      ? std::string::npos
                                      : row.find(',', first_comma + 1);
        if (first_comma == std::string::npos || second_comma == std::string::npos ||
            row.find(',', second_comma + 1) != std::string::npos) {
            throw std::runtime_error("counts CSV line " + std::to_string(line_no) +
                                     ": expected exactly 3 fields 'label,k,count'");
        }
        const std::string label = trim(row.substr(0, first_comma));
        if (label.empty()) {
            throw std::runtime_error("counts CSV line " + std::to_string(line_no) +
                                     ": empty label");
        }
        const auto shift = static_cast<Index>(parse_int_field(
            trim(row.substr(first_comma + 1, second_comma - first_comma - 1)), "shift index",
            line_no));
        const std::int64_t count =
            parse_int_field(trim(row.substr(second_comma + 1)), "count", line_no);
        if (shift < 0) {
            throw std::runtime_error("counts CSV line " + std::to_string(line_no) +
                                     ": shift index must be nonnegative");
        }
        if (dimension_hint && shift >= *dimension_hint) {
            throw std::runtime_error("counts CSV line " + std::to_string(line_no) +
                                     ": shift index " + std::to_string(shift) +
                                     " outside [0, " + std::to_string(*dimension_hint - 1) + "]");
        }
        if (count < 0) {
            throw std::runtime_error("counts CSV line " + std::to_string(line_no) +
                                     ": negative count");
        }
        if (table.find(label) == table.end()) {
            label_order.push_back(label);
        }
        table[label][shift] += count;
        max_shift = std::max(max_shift, shift);
    }
    if (label_order.empty()) {
        throw std::runtime_error("counts CSV: no data rows");
    }

    const Dimension d(dimension_hint ? *dimension_hint : max_shift + 1);
    std::vector<channel::DisturbanceCounts> outcomes;
    outcomes.reserve(label_order.size());
    for (const auto& label : label_order) {
        channel::DisturbanceCounts counts{label,
                                          std::vector<std::int64_t>(
                                              static_cast<std::size_t>(d.value()), 0)};
        for (const auto& [shift, count] : table[label]) {
            counts.shift_counts[static_cast<std::size_t>(shift)] = count;
        }
        if (counts.total() < 1) {
            throw std::runtime_error("counts CSV: outcome '" + label + "' has no observations");
        }
        outcomes.push_back(std::move(counts));
    }
    return {d, std::move(outcomes)};
}

} // namespace

CountsDocument parse_counts_document(const std::string& text,
                                     std::optional<Index> dimension_hint) {
    for (const char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            continue;
        }
        return c == '{' ? parse_counts_json(text) : parse_counts_csv(text, dimension_hint);
    }
    throw std::runtime_error("counts document: empty input");
}

std::string fnv1a64_digest(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string render_expand(Index d, const std::vector<SpectrumRow>& rows, Format format) {
    switch (format) {
        case Format::Json: {
            ordered_json doc = header_json();
            doc["dimension"] = d;
            doc["outcomes"] = ordered_json::array();
            for (const auto& row : rows) {
                ordered_json entry;
                entry["label"] = row.label;
                entry["coefficients"] = ordered_json::array();
                for (Index k = 0; k < d; ++k) {
                    entry["coefficients"].push_back(
                        ordered_json{{"re", row.coeffs[k].real()}, {"im", row.coeffs[k].imag()}});
                }
                entry["abs_squared"] = std::vector<double>(row.abs_squared.begin(),
                                                           row.abs_squared.end());
                entry["disturbance_distribution"] =
                    std::vector<double>(row.distribution.begin(), row.distribution.end());
                doc["outcomes"].push_back(std::move(entry));
            }
            return doc.dump(2) + "\n";
        }
        case Format::Csv: {
            std::ostringstream out;
            out << "label,k,c_re,c_im,abs_squared,shift_probability\n";
            for (const auto& row : rows) {
                for (Index k = 0; k < d; ++k) {
                    out << row.label << ',' << k << ',' << full_precision(row.coeffs[k].real())
                        << ',' << full_precision(row.coeffs[k].imag()) << ','
                        << full_precision(row.abs_squared[k]) << ','
                        << full_precision(row.distribution[k]) << '\n';
                }
            }
            return out.str();
        }
        case Format::Table: {
            std::ostringstream out;
            for (const auto& row : rows) {
                out << "outcome " << row.label << " (d = " << d << ")\n";
                out << "  " << std::setw(4) << "k" << std::setw(14) << "Re(C_k)" << std::setw(14)
                    << "Im(C_k)" << std::setw(14) << "|C_k|^2" << std::setw(14) << "p(shift k)"
                    << "\n";
                for (Index k = 0; k < d; ++k) {
                    out << "  " << std::setw(4) << k << std::setw(14)
                        << fixed_digits(row.coeffs[k].real(), 6) << std::setw(14)
                        << fixed_digits(row.coeffs[k].imag(), 6) << std::setw(14)
                        << fixed_digits(row.abs_squared[k], 6) << std::setw(14)
                        << fixed_digits(row.distribution[k], 6) << "\n";
                }
            }
            return out.str();
        }
    }
    throw std::logic_error("render_expand: unreachable");
}

std::string render_bound(Index d, const std::vector<BoundReport<double>>& reports, Format format) {
    switch (format) {
        case Format::Json: {
            ordered_json doc = header_json();
            doc["dimension"] = d;
            doc["outcomes"] = ordered_json::array();
            for (const auto& report : reports) {
                doc["outcomes"].push_back(ordered_json{{"label", report.outcome_label},
                                                       {"bound", report.bound},
                                                       {"max_posterior", report.max_posterior},
                                                       {"slack", report.slack},
                                                       {"tight", report.tight},
                                                       {"argmax_index", report.argmax_index},
                                                       {"argmax_tie", report.argmax_tie}});
            }
            return doc.dump(2) + "\n";
        }
        case Format::Csv: {
            std::ostringstream out;
            out << "label,bound,max_posterior,slack,tight,argmax_index,argmax_tie\n";
            for (const auto& report : reports) {
                out << report.outcome_label << ',' << full_precision(report.bound) << ','
                    << full_precision(report.max_posterior) << ',' << full_precision(report.slack)
                    << ',' << (report.tight ? "true" : "false") << ',' << report.argmax_index
                    << ',' << (report.argmax_tie ? "true" : "false") << '\n';
            }
            return out.str();
        }
        case Format::Table: {
            std::ostringstream out;
            out << std::setw(12) << "label" << std::setw(14) << "bound" << std::setw(16)
                << "max_posterior" << std::setw(14) << "slack" << std::setw(8) << "tight"
                << "\n";
            for (const auto& report : reports) {
                out << std::setw(12) << report.outcome_label << std::setw(14)
                    << fixed_digits(report.bound, 6) << std::setw(16)
                    << fixed_digits(report.max_posterior, 6) << std::setw(14)
                    << fixed_digits(report.slack, 6) << std::setw(8)
                    << (report.tight ? "yes" : "no") << "\n";
            }
            return out.str();
        }
    }
    throw std::logic_error("render_bound: unreachable");
}

std::string render_counts(Index d, const std::vector<channel::DisturbanceCounts>& counts,
                          Format format, std::optional<CountsMeta> meta) {
    switch (format) {
        case Format::Json: {
            ordered_json doc = header_json();
            doc["dimension"] = d;
            if (meta) {
                doc["seed"] = meta->seed;
                doc["shots"] = meta->shots;
            }
            doc["outcomes"] = ordered_json::array();
            for (const auto& outcome : counts) {
                doc["outcomes"].push_back(
                    ordered_json{{"label", outcome.label}, {"shift_counts", outcome.shift_counts}});
            }
            return doc.dump(2) + "\n";
        }
        case Format::Csv: {
            std::ostringstream out;
            out << "label,k,count\n";
            for (const auto& outcome : counts) {
                for (Index k = 0; k < d; ++k) {
                    out << outcome.label << ',' << k << ','
                        << outcome.shift_counts[static_cast<std::size_t>(k)] << '\n';
                }
            }
            return out.str();
        }
        case Format::Table: {
            std::ostringstream out;
            for (const auto& outcome : counts) {
                out << "outcome " << outcome.label << " (total " << outcome.total() << ")\n";
                for (Index k = 0; k < d; ++k) {
                    out << "  shift " << std::setw(4) << k << "  " << std::setw(12)
                        << outcome.shift_counts[static_cast<std::size_t>(k)] << "\n";
                }
            }
            return out.str();
        }
    }
    throw std::logic_error("render_counts: unreachable");
}

std::string render_leak_report(const channel::LeakReport& report, const std::string& input_digest,
                               Format format) {
    switch (format) {
        case Format::Json: {
            ordered_json doc = header_json();
            doc["input_digest"] = input_digest;
            doc["dimension"] = report.dimension;
            doc["wilson_z"] = report.wilson_z;
            doc["outcomes"] = ordered_json::array();
            for (const auto& outcome : report.outcomes) {
                doc["outcomes"].push_back(ordered_json{
                    {"label", outcome.label},
                    {"total", outcome.total},
                    {"frequency", outcome.frequency},
                    {"empirical_distribution",
                     std::vector<double>(outcome.empirical_distribution.begin(),
                                         outcome.empirical_distribution.end())},
                    {"leak_bound", outcome.leak_bound},
                    {"wilson_high_bound", outcome.wilson_high_bound}});
            }
            // Weighted mean across outcomes: a whole-channel summary, as
            // opposed to the per-outcome bounds above.
            doc["aggregate_bound"] = report.aggregate_bound;
            doc["aggregate_kind"] = "frequency_weighted_mean";
            doc["max_outcome_bound"] = report.max_outcome_bound;
            return doc.dump(2) + "\n";
        }
        case Format::Csv: {
            std::ostringstream out;
            out << "label,total,frequency,leak_bound,wilson_high_bound\n";
            std::int64_t grand_total = 0;
            for (const auto& outcome : report.outcomes) {
                grand_total += outcome.total;
                out << outcome.label << ',' << outcome.total << ','
                    << full_precision(outcome.frequency) << ','
                    << full_precision(outcome.leak_bound) << ','
                    << full_precision(outcome.wilson_high_bound) << '\n';
            }
            out << "(aggregate)," << grand_total << ",1," << full_precision(report.aggregate_bound)
                << ",\n";
            return out.str();
        }
        case Format::Table: {
            std::ostringstream out;
            out << "leak assessment (d = " << report.dimension << ", input " << input_digest
                << ")\n";
            out << std::setw(12) << "label" << std::setw(12) << "total" << std::setw(12)
                << "frequency" << std::setw(14) << "leak_bound" << std::setw(16) << "wilson_high"
                << "\n";
            for (const auto& outcome : report.outcomes) {
                out << std::setw(12) << outcome.label << std::setw(12) << outcome.total
                    << std::setw(12) << fixed_digits(outcome.frequency, 4) << std::setw(14)
                    << fixed_digits(outcome.leak_bound, 6) << std::setw(16)
                    << fixed_digits(outcome.wilson_high_bound, 6) << "\n";
            }
            out << "aggregate bound (frequency-weighted mean): "
                << fixed_digits(report.aggregate_bound, 6) << "\n";
            out << "max outcome bound: " << fixed_digits(report.max_outcome_bound, 6) << "\n";
            return out.str();
        }
    }
    throw std::logic_error("render_leak_report: unreachable");
}

std::string render_verification(const oracle::VerificationReport& report, const VerifyMeta& meta,
                                Format format) {
    switch (format) {
        case Format::Json: {
            ordered_json doc = header_json();
            doc["generator"] = report.generator;
            doc["kind"] = meta.kind;
            doc["dims"] = meta.dims;
            doc["count_per_dim"] = meta.count_per_dim;
            doc["seed"] = meta.seed;
            doc["tolerance"] = meta.tolerance;
            doc["checks_run"] = report.checks_run;
            doc["failures"] = ordered_json::array();
            for (const auto& failure : report.failures) {
                doc["failures"].push_back(ordered_json{{"check", failure.check},
                                                       {"dimension", failure.dimension},
                                                       {"instance_seed", failure.instance_seed},
                                                       {"observed", failure.observed},
                                                       {"expected", failure.expected},
                                                       {"tolerance", failure.tolerance}});
            }
            if (std::isfinite(report.max_bound_slack)) {
                doc["max_bound_slack"] = report.max_bound_slack;
                doc["min_bound_slack"] = report.min_bound_slack;
            } else {
                doc["max_bound_slack"] = nullptr;
                doc["min_bound_slack"] = nullptr;
            }
            doc["passed"] = report.passed();
            return doc.dump(2) + "\n";
        }
        case Format::Csv: {
            std::ostringstream out;
            out << "check,dimension,instance_seed,observed,expected,tolerance\n";
            for (const auto& failure : report.failures) {
                out << failure.check << ',' << failure.dimension << ',' << failure.instance_seed
                    << ',' << full_precision(failure.observed) << ','
                    << full_precision(failure.expected) << ','
                    << full_precision(failure.tolerance) << '\n';
            }
            return out.str();
        }
        case Format::Table: {
            std::ostringstream out;
            out << "verification sweep: kind " << meta.kind << ", seed " << meta.seed
                << ", tolerance " << full_precision(meta.tolerance) << "\n";
            out << "dims:";
            for (const Index d : meta.dims) {
                out << ' ' << d;
            }
            out << "  (" << meta.count_per_dim << " instances each)\n";
            out << "generator: " << report.generator << "\n";
            out << "checks run: " << report.checks_run << "\n";
            if (std::isfinite(report.max_bound_slack)) {
                out << "bound slack range: [" << full_precision(report.min_bound_slack) << ", "
                    << full_precision(report.max_bound_slack) << "]\n";
            }
            if (report.passed()) {
                out << "all checks passed\n";
            } else {
                out << report.failures.size() << " failures:\n";
                for (const auto& failure : report.failures) {
                    out << "  " << failure.check << " (d = " << failure.dimension << ", seed "
                        << failure.instance_seed << "): observed "
                        << full_precision(failure.observed) << ", expected "
                        << full_precision(failure.expected) << ", tolerance "
                        << full_precision(failure.tolerance) << "\n";
                }
            }
            return out.str();
        }
    }
    throw std::logic_error("render_verification: unreachable");
}

} // namespace qdisturb::io
