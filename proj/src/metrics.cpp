#include "spikenum/metrics.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "spikenum/numeral.hpp"
#include "spikenum/raster.hpp"
#include "spikenum/spike_codecs.hpp"

namespace spikenum {

using ordered_json = nlohmann::ordered_json;

namespace {

// Metrics read the actual artifact, so rate-unary rasters above this many
// slots are refused rather than materialized.
constexpr std::int64_t kRasterMaterializeCap = std::int64_t{1} << 22;

std::int64_t minimal_width(const Value& v, std::int64_t base)
{
    return static_cast<std::int64_t>(positional_encode(v, base).width());
}

Ratio grid_utilization(const Value& total, const Value& capacity)
{
    return capacity == 0 ? Ratio(0) : Ratio(total, capacity);
}

Value nonzero_digits(const PositionalNumeral& numeral)
{
    return static_cast<std::int64_t>(
        std::count_if(numeral.digits.begin(), numeral.digits.end(),
                      [](std::int64_t d) { return d != 0; }));
}

Value sum_counts(const SpikeRaster& raster)
{
    Value total = 0;
    for (std::int64_t c : spike_counts(raster)) {
        total += c;
    }
    return total;
}

}  // namespace

EncodingMetrics measure(const Value& v, Scheme scheme, const MeasureParams& params)
{
    if (v < 0) {
        throw Error(Errc::InvalidParams, "value must be nonnegative, got " + v.str());
    }

    EncodingMetrics m;
    m.scheme = scheme;

    switch (scheme) {
    case Scheme::Unary: {
        m.neuron_count = 1;
        m.slot_count = v;
        m.total = v;
        m.utilization = grid_utilization(m.total, v);
        m.max_single_error_impact = 1;
        return m;
    }
    case Scheme::Positional: {
        const std::int64_t base = params.n.value_or(2);
        const std::int64_t width = params.k.value_or(minimal_width(v, base));
        if (v >= unary_length_for(base, width)) {
            throw Error(Errc::Overflow,
                        v.str() + " needs more than " + std::to_string(width) +
                            " digits in base " + std::to_string(base));
        }
        const auto numeral = positional_encode(v, base, static_cast<std::size_t>(width));
        m.neuron_count = 1;
        m.slot_count = width;
        m.total = nonzero_digits(numeral);
        m.utilization = grid_utilization(m.total, Value(width));
        m.max_single_error_impact =
            is_power_of_two(base)
                ? max_error_impact(Scheme::Positional, base, width)
                : Value(base - 1) * pow_value(Value(base), static_cast<unsigned>(width - 1));
        return m;
    }
    case Scheme::UnaryPositional: {
        const std::int64_t n = params.n.value_or(2);
        if (n < 2 || !is_power_of_two(n)) {
            throw Error(Errc::InvalidBase,
                        "unary-positional base must be a power of two >= 2");
        }
        const int m_bits = log2_exact(n);
        const std::int64_t k =
            params.k.value_or((minimal_width(v, 2) + m_bits - 1) / m_bits);
        if (v >= pow_value(Value(n), static_cast<unsigned>(k))) {
            throw Error(Errc::Overflow,
                        v.str() + " does not fit " + std::to_string(k) + " streams");
        }
        const auto word = binary_to_unary_positional(
            positional_encode(v, 2, static_cast<std::size_t>(k * m_bits)), n);
        Value popcount_total = 0;
        for (const auto& stream : word.streams) {
            popcount_total += static_cast<std::int64_t>(
                std::count(stream.begin(), stream.end(), true));
        }
        m.neuron_count = k;
        m.slot_count = n;
        m.total = popcount_total;
        m.utilization = grid_utilization(m.total, Value(k) * n);
        m.max_single_error_impact = max_error_impact(Scheme::UnaryPositional, n, k);
        return m;
    }
    case Scheme::RateUnary: {
        if (v > kRasterMaterializeCap) {
            throw Error(Errc::CapacityExceeded,
                        "rate-unary metrics materialize the raster; " + v.str() +
                            " spikes exceed the cap");
        }
        const std::int64_t cap = params.slot_cap.value_or(static_cast<std::int64_t>(v));
        if (cap > kRasterMaterializeCap) {
            throw Error(Errc::CapacityExceeded,
                        "slot cap " + std::to_string(cap) + " exceeds the raster cap");
        }
        const auto raster = rate_unary_encode(v, cap);
        m.neuron_count = 1;
        m.slot_count = raster.slot_count();
        m.total = sum_counts(raster);
        m.utilization = grid_utilization(m.total, Value(raster.slot_count()));
        m.max_single_error_impact = 1;
        return m;
    }
    case Scheme::Temporal: {
        const std::int64_t base = params.n.value_or(2);
        const std::int64_t k = params.k.value_or(minimal_width(v, base));
        const auto raster = temporal_positional_encode(v, base, k);
        m.neuron_count = k;
        m.slot_count = raster.slot_count();
        m.total = sum_counts(raster);
        m.utilization = grid_utilization(m.total, Value(k) * raster.slot_count());
        m.max_single_error_impact = pow_value(Value(base), static_cast<unsigned>(k - 1));
        m.lossless = base == 2;
        return m;
    }
    case Scheme::TemporalRate: {
        const std::int64_t n = params.n.value_or(2);
        const std::int64_t k = params.k.value_or(minimal_width(v, n));
        const TemporalRateParams tr{n, k};
        const auto raster = temporal_rate_encode(v, tr);
        m.neuron_count = k;
        m.slot_count = raster.slot_count();
        m.total = sum_counts(raster);
        m.utilization = grid_utilization(m.total, Value(k) * raster.slot_count());
        m.max_single_error_impact = max_error_impact(Scheme::TemporalRate, n, k);
        return m;
    }
    }
    throw Error(Errc::UnknownScheme, "unhandled scheme");
}

Table1Report table1_report(const std::vector<std::int64_t>& bases,
                           std::int64_t digits_from, std::int64_t digits_to)
{
    if (digits_from < 1 || digits_to < digits_from) {
        throw Error(Errc::InvalidWidth, "bad digit range");
    }
    Table1Report report;
    for (std::int64_t base : bases) {
        for (std::int64_t d = digits_from; d <= digits_to; ++d) {
            report.rows.push_back({base, d, unary_length_for(base, d)});
        }
    }
    // The table's worked values, recomputed through the codecs.
    for (const auto& [value, base] :
         {std::pair<Value, std::int64_t>{13, 2}, {9876, 10}}) {
        Table1Example example;
        example.value = value;
        example.base = base;
        example.positional_digits =
            static_cast<std::int64_t>(positional_encode(value, base).width());
        example.unary_digits = unary_decode(unary_encode(value));
        example.bound = unary_length_for(base, example.positional_digits);
        report.examples.push_back(example);
    }
    return report;
}

std::string table1_to_csv(const Table1Report& report)
{
    std::string out = "base,digits,unary_length,example_value,example_unary_digits\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.base);
        out += ',';
        out += std::to_string(row.digits);
        out += ',';
        out += row.unary_length.str();
        const auto example =
            std::find_if(report.examples.begin(), report.examples.end(),
                         [&row](const Table1Example& e) {
                             return e.base == row.base &&
                                    e.positional_digits == row.digits;
                         });
        if (example != report.examples.end()) {
            out += ',';
            out += example->value.str();
            out += ',';
            out += example->unary_digits.str();
        }
        else {
            out += ",,";
        }
        out += '\n';
    }
    return out;
}

std::string table1_to_json(const Table1Report& report)
{
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json r;
        r["base"] = row.base;
        r["digits"] = row.digits;
        r["unary_length"] = row.unary_length.str();
        rows.push_back(std::move(r));
    }
    ordered_json examples = ordered_json::array();
    for (const auto& e : report.examples) {
        ordered_json r;
        r["value"] = e.value.str();
        r["base"] = e.base;
        r["positional_digits"] = e.positional_digits;
        r["unary_digits"] = e.unary_digits.str();
        r["bound"] = e.bound.str();
        examples.push_back(std::move(r));
    }
    ordered_json doc;
    doc["rows"] = std::move(rows);
    doc["examples"] = std::move(examples);
    return doc.dump();
}

SchemeSpec parse_scheme_spec(const std::string& text)
{
    static const Scheme kByLength[] = {
        Scheme::UnaryPositional, Scheme::TemporalRate, Scheme::RateUnary,
        Scheme::Positional,      Scheme::Temporal,     Scheme::Unary,
    };
    for (Scheme scheme : kByLength) {
        const std::string tag = scheme_tag(scheme);
        if (text == tag) {
            return SchemeSpec{scheme, 2};
        }
        if (text.size() > tag.size() + 1 && text.compare(0, tag.size(), tag) == 0 &&
            text[tag.size()] == '-') {
            const std::string suffix = text.substr(tag.size() + 1);
            try {
                return SchemeSpec{scheme, std::stoll(suffix)};
            }
            catch (const std::exception&) {
                break;
            }
        }
    }
    throw Error(Errc::UnknownScheme, "unknown scheme spec '" + text + "'");
}

std::vector<TradeoffRow> tradeoff_report(const std::vector<Value>& values,
                                         const std::vector<SchemeSpec>& schemes)
{
    std::vector<TradeoffRow> rows;
    if (values.empty()) {
        return rows;
    }
    const Value max_v = *std::max_element(values.begin(), values.end());

    for (const SchemeSpec& spec : schemes) {
        MeasureParams params;
        params.n = spec.base;
        switch (spec.scheme) {
        case Scheme::Unary:
            params.n.reset();
            break;
        case Scheme::RateUnary:
            params.n.reset();
            if (max_v > kRasterMaterializeCap) {
                throw Error(Errc::CapacityExceeded,
                            "rate-unary tradeoff would need " + max_v.str() + " slots");
            }
            params.slot_cap = static_cast<std::int64_t>(max_v);
            break;
        case Scheme::Positional:
        case Scheme::Temporal:
            params.k = minimal_width(max_v, spec.base);
            break;
        case Scheme::UnaryPositional:
        case Scheme::TemporalRate: {
            const int m_bits = log2_exact(spec.base);
            params.k = (minimal_width(max_v, 2) + m_bits - 1) / m_bits;
            break;
        }
        }

        TradeoffRow row;
        row.scheme = spec.scheme;
        row.base = spec.base;
        bool first = true;
        for (const Value& v : values) {
            const EncodingMetrics m = measure(v, spec.scheme, params);
            if (first) {
                row.k = m.neuron_count;
                row.max_single_error_impact = m.max_single_error_impact;
                row.lossless = m.lossless;
                first = false;
            }
            row.max_latency = std::max(row.max_latency, m.slot_count);
            row.total_symbols += m.total;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string tradeoff_to_csv(const std::vector<TradeoffRow>& rows)
{
    std::string out =
        "scheme,base,k,max_latency,total_symbols,max_single_error_impact,lossless\n";
    for (const auto& row : rows) {
        out += scheme_tag(row.scheme);
        out += ',';
        out += std::to_string(row.base);
        out += ',';
        out += std::to_string(row.k);
        out += ',';
        out += row.max_latency.str();
        out += ',';
        out += row.total_symbols.str();
        out += ',';
        out += row.max_single_error_impact.str();
        out += ',';
        out += row.lossless ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string tradeoff_to_json(const std::vector<TradeoffRow>& rows)
{
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["scheme"] = scheme_tag(row.scheme);
        r["base"] = row.base;
        r["k"] = row.k;
        r["max_latency"] = row.max_latency.str();
        r["total_symbols"] = row.total_symbols.str();
        r["max_single_error_impact"] = row.max_single_error_impact.str();
        r["lossless"] = row.lossless;
        arr.push_back(std::move(r));
    }
    return arr.dump();
}

std::string metrics_to_json(const EncodingMetrics& metrics)
{
    ordered_json doc;
    doc["scheme"] = scheme_tag(metrics.scheme);
    doc["neuron_count"] = metrics.neuron_count;
    doc["slot_count"] = metrics.slot_count.str();
    doc["total"] = metrics.total.str();
    doc["utilization"] = ratio_to_string(metrics.utilization);
    doc["max_single_error_impact"] = metrics.max_single_error_impact.str();
    doc["lossless"] = metrics.lossless;
    return doc.dump();
}

std::string metrics_to_csv(const EncodingMetrics& metrics)
{
    std::string out =
        "scheme,neuron_count,slot_count,total,utilization,max_single_error_impact,"
        "lossless\n";
    out += scheme_tag(metrics.scheme);
    out += ',';
    out += std::to_string(metrics.neuron_count);
    out += ',';
    out += metrics.slot_count.str();
    out += ',';
    out += metrics.total.str();
    out += ',';
    out += ratio_to_string(metrics.utilization);
    out += ',';
    out += metrics.max_single_error_impact.str();
    out += ',';
    out += metrics.lossless ? "true" : "false";
    out += '\n';
    return out;
}

}  // namespace spikenum
