#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spikenum/scheme.hpp"
#include "spikenum/value.hpp"

namespace spikenum {

// Cost profile of one encoded value. For spike schemes the grid is
// neurons x slots; digit schemes use the analogous streams x digits grid.
// `total` counts the occupied symbols (spikes or ones/nonzero digits) and
// utilization is total / (neuron_count * slot_count), exact.
struct EncodingMetrics {
    Scheme scheme = Scheme::Unary;
    std::int64_t neuron_count = 0;
    Value slot_count = 0;  // latency in slots (digit length for digit schemes)
    Value total = 0;
    Ratio utilization = 0;
    Value max_single_error_impact = 0;
    bool lossless = true;

    bool operator==(const EncodingMetrics&) const = default;
};

struct MeasureParams {
    std::optional<std::int64_t> n;         // unary base / temporal base / window
    std::optional<std::int64_t> k;         // streams / neurons / digit width
    std::optional<std::int64_t> slot_cap;  // rate-unary (default: exactly v slots)
};

// Metrics computed from the actually encoded artifact. Missing shape
// parameters default to the minimal shape covering v.
EncodingMetrics measure(const Value& v, Scheme scheme, const MeasureParams& params = {});

// --- Table 1: unary length growth ---

struct Table1Row {
    std::int64_t base = 0;
    std::int64_t digits = 0;
    Value unary_length = 0;  // base^digits

    bool operator==(const Table1Row&) const = default;
};

// The table's two worked values, reproduced from the actual codecs.
struct Table1Example {
    Value value = 0;
    std::int64_t base = 0;
    std::int64_t positional_digits = 0;
    Value unary_digits = 0;
    Value bound = 0;  // base^positional_digits

    bool operator==(const Table1Example&) const = default;
};

struct Table1Report {
    std::vector<Table1Row> rows;
    std::vector<Table1Example> examples;
};

Table1Report table1_report(const std::vector<std::int64_t>& bases,
                           std::int64_t digits_from, std::int64_t digits_to);

std::string table1_to_csv(const Table1Report& report);
std::string table1_to_json(const Table1Report& report);

// --- cross-scheme tradeoff ---

struct SchemeSpec {
    Scheme scheme = Scheme::Unary;
    std::int64_t base = 2;  // unary base n for the hybrid schemes
};

// Parses "temporal-8" / "temporal" / "unary-positional-16" style selectors.
SchemeSpec parse_scheme_spec(const std::string& text);

struct TradeoffRow {
    Scheme scheme = Scheme::Unary;
    std::int64_t base = 2;
    std::int64_t k = 0;            // derived digit width / neuron count
    Value max_latency = 0;         // worst slot count over the value set
    Value total_symbols = 0;       // spikes or occupied digits, summed
    Value max_single_error_impact = 0;
    bool lossless = true;

    bool operator==(const TradeoffRow&) const = default;
};

// One row per scheme spec, in the given order. Every value is encoded
// under the minimal shape that covers the whole set.
std::vector<TradeoffRow> tradeoff_report(const std::vector<Value>& values,
                                         const std::vector<SchemeSpec>& schemes);

std::string tradeoff_to_csv(const std::vector<TradeoffRow>& rows);
std::string tradeoff_to_json(const std::vector<TradeoffRow>& rows);

std::string metrics_to_json(const EncodingMetrics& metrics);
std::string metrics_to_csv(const EncodingMetrics& metrics);

}  // namespace spikenum
