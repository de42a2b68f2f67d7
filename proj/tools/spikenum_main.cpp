#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "spikenum/error_lab.hpp"
#include "spikenum/metrics.hpp"
#include "spikenum/numeral.hpp"
#include "spikenum/raster.hpp"
#include "spikenum/spike_codecs.hpp"
#include "spikenum/value.hpp"

namespace {

using namespace spikenum;

std::string read_input(const std::string& path)
{
    if (path.empty() || path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        if (std::cin.bad()) {
            throw Error(Errc::IoError, "failed to read stdin");
        }
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::IoError, "cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error(Errc::IoError, "failed to read '" + path + "'");
    }
    return buffer.str();
}

void write_output(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
    }
    out << text;
    if (!text.empty() && text.back() != '\n') {
        out << '\n';
    }
    if (!out) {
        throw Error(Errc::IoError, "failed to write '" + path + "'");
    }
}

std::string trimmed(std::string text)
{
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' ||
                             text.back() == ' ' || text.back() == '\t')) {
        text.pop_back();
    }
    std::size_t start = 0;
    while (start < text.size() && (text[start] == ' ' || text[start] == '\t')) {
        ++start;
    }
    return text.substr(start);
}

// Values come in as decimal or as "<digits>_<base>" numerals.
Value parse_cli_value(const std::string& text)
{
    if (text.find('_') != std::string::npos) {
        return positional_decode(parse_positional(text));
    }
    return parse_value(text);
}

struct CommonOpts {
    std::string format;
    std::string output;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int jobs = 1;
};

struct ShapeOpts {
    std::string scheme;
    std::int64_t base = 2;
    std::int64_t n = 2;
    bool n_given = false;
    bool base_given = false;
    std::optional<std::int64_t> k;
    std::optional<std::int64_t> slot_cap;
    std::string mode = "fixed";
    bool lenient = false;
};

void add_shape_options(CLI::App* cmd, ShapeOpts& shape, bool with_mode = true)
{
    cmd->add_option("--scheme", shape.scheme, "encoding scheme tag")->required();
    cmd->add_option("--base", shape.base, "positional/temporal base")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--n", shape.n, "unary base / window length (power of two)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--k", shape.k, "stream / neuron / digit count");
    cmd->add_option("--slot-cap", shape.slot_cap, "rate-unary slot capacity");
    if (with_mode) {
        cmd->add_option("--mode", shape.mode, "temporal decode mode: fixed|order");
        cmd->add_flag("--lenient", shape.lenient,
                      "clamp out-of-range temporal-rate counts instead of failing");
    }
}

// The temporal codec is parameterized by an ordinary base; the others use
// the power-of-two unary base. Accept either flag for convenience.
std::int64_t effective_base(const ShapeOpts& shape, Scheme scheme)
{
    if (scheme == Scheme::Temporal || scheme == Scheme::Positional) {
        return shape.base_given ? shape.base : (shape.n_given ? shape.n : 2);
    }
    return shape.n_given ? shape.n : (shape.base_given ? shape.base : 2);
}

std::int64_t width_for(const Value& v, std::int64_t base, std::optional<std::int64_t> k)
{
    if (k) {
        return *k;
    }
    return static_cast<std::int64_t>(positional_encode(v, base).width());
}

int run_encode(const ShapeOpts& shape, const CommonOpts& common,
               const std::string& value_text, std::uint64_t max_digits)
{
    const Scheme scheme = parse_scheme(shape.scheme);
    const Value v = parse_cli_value(value_text);
    const std::int64_t base = effective_base(shape, scheme);
    std::string format = common.format;
    if (format.empty()) {
        format = is_spike_scheme(scheme) ? "json" : "text";
    }

    std::string out;
    switch (scheme) {
    case Scheme::Positional: {
        const auto numeral = positional_encode(
            v, base,
            shape.k ? std::optional<std::size_t>(static_cast<std::size_t>(*shape.k))
                    : std::nullopt);
        out = format_positional(numeral);
        break;
    }
    case Scheme::Unary:
        out = format_unary(unary_encode(v), max_digits);
        break;
    case Scheme::UnaryPositional: {
        const int m_bits = log2_exact(base);
        const std::int64_t k =
            shape.k.value_or((width_for(v, 2, std::nullopt) + m_bits - 1) / m_bits);
        const auto word = binary_to_unary_positional(
            positional_encode(v, 2, static_cast<std::size_t>(k * m_bits)), base);
        out = format_unary_positional(word);
        break;
    }
    case Scheme::RateUnary: {
        const std::int64_t cap = shape.slot_cap.value_or(static_cast<std::int64_t>(v));
        out = raster_to_json(rate_unary_encode(v, cap));
        break;
    }
    case Scheme::Temporal: {
        const std::int64_t k = width_for(v, base, shape.k);
        out = raster_to_json(temporal_positional_encode(v, base, k));
        break;
    }
    case Scheme::TemporalRate: {
        const std::int64_t k = width_for(v, base, shape.k);
        out = raster_to_json(temporal_rate_encode(v, TemporalRateParams{base, k}));
        break;
    }
    }

    if (is_spike_scheme(scheme) && format == "csv") {
        out = raster_to_csv(raster_from_json(out));
    }
    else if (format == "json" && !is_spike_scheme(scheme)) {
        nlohmann::ordered_json doc;
        doc["scheme"] = scheme_tag(scheme);
        doc["text"] = out;
        out = doc.dump();
    }
    else if (format != "text" && format != "json") {
        throw Error(Errc::InvalidParams, "unknown format '" + format + "'");
    }
    write_output(out, common.output);
    return 0;
}

int run_decode(const ShapeOpts& shape, const CommonOpts& common, const std::string& input)
{
    const Scheme scheme = parse_scheme(shape.scheme);
    const std::string text = read_input(input);
    const DecodeMode mode = parse_decode_mode(shape.mode);
    const std::int64_t base = effective_base(shape, scheme);

    Value v;
    switch (scheme) {
    case Scheme::Positional:
        v = positional_decode(parse_positional(trimmed(text)));
        break;
    case Scheme::Unary:
        v = unary_decode(parse_unary(trimmed(text)));
        break;
    case Scheme::UnaryPositional:
        v = unary_positional_decode(parse_unary_positional(trimmed(text)));
        break;
    case Scheme::RateUnary:
        v = rate_unary_decode(raster_from_json(text));
        break;
    case Scheme::Temporal:
        v = temporal_positional_decode(raster_from_json(text), base, mode);
        break;
    case Scheme::TemporalRate: {
        const SpikeRaster raster = raster_from_json(text);
        const std::int64_t k = shape.k.value_or(raster.neuron_count());
        if (k < 1 || (shape.n_given ? 0 : raster.slot_count() % k != 0)) {
            throw Error(Errc::SchemeMismatch, "cannot infer window length from raster");
        }
        const std::int64_t n = shape.n_given ? shape.n : raster.slot_count() / k;
        v = temporal_rate_decode(raster, TemporalRateParams{n, k}, mode,
                                 shape.lenient ? CountPolicy::Lenient
                                               : CountPolicy::Strict);
        break;
    }
    }
    write_output(v.str(), common.output);
    return 0;
}

int run_convert(const std::string& to, const ShapeOpts& shape, const CommonOpts& common,
                const std::string& input, std::uint64_t max_digits)
{
    const std::string text = trimmed(read_input(input));

    // Source form is recognized by its suffix.
    Value v;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "_u") {
        v = unary_decode(parse_unary(text));
    }
    else if (text.find("_u") != std::string::npos) {
        v = unary_positional_decode(parse_unary_positional(text));
    }
    else if (text.find('_') != std::string::npos) {
        v = positional_decode(parse_positional(text));
    }
    else {
        v = parse_value(text);
    }

    ShapeOpts target = shape;
    target.scheme = to;
    CommonOpts target_common = common;
    if (target_common.format.empty()) {
        target_common.format = "text";
    }
    return run_encode(target, target_common, v.str(), max_digits);
}

struct EventOpts {
    std::string kind;
    std::int64_t stream = 0;
    std::int64_t bit = 0;
    std::int64_t neuron = 0;
    std::int64_t slot = 0;
    std::int64_t delta = 0;
};

ErrorEvent build_event(const EventOpts& opts)
{
    if (opts.kind == "digit-flip") {
        return DigitFlip{opts.stream, opts.bit};
    }
    if (opts.kind == "spike-insert") {
        return SpikeInsert{opts.neuron, opts.slot};
    }
    if (opts.kind == "spike-delete") {
        return SpikeDelete{opts.neuron, opts.slot};
    }
    if (opts.kind == "spike-shift") {
        return SpikeShift{opts.neuron, opts.slot, opts.delta};
    }
    throw Error(Errc::InvalidParams, "unknown event kind '" + opts.kind + "'");
}

int run_inject(const ShapeOpts& shape, const CommonOpts& common, const EventOpts& event_opts,
               const std::string& input, bool with_impact)
{
    const Scheme scheme = parse_scheme(shape.scheme);
    const std::string text = read_input(input);
    const ErrorEvent event = build_event(event_opts);
    const DecodeMode mode = parse_decode_mode(shape.mode);
    const std::int64_t base = effective_base(shape, scheme);

    std::string artifact;
    Value before;
    Value after;
    switch (scheme) {
    case Scheme::Positional: {
        const auto original = parse_positional(trimmed(text));
        const auto perturbed = inject(original, event);
        artifact = format_positional(perturbed);
        before = positional_decode(original);
        after = positional_decode(perturbed);
        break;
    }
    case Scheme::UnaryPositional: {
        const auto original = parse_unary_positional(trimmed(text));
        const auto perturbed = inject(original, event);
        artifact = format_unary_positional(perturbed);
        before = unary_positional_decode(original);
        after = unary_positional_decode(perturbed);
        break;
    }
    case Scheme::RateUnary:
    case Scheme::Temporal:
    case Scheme::TemporalRate: {
        const SpikeRaster original = raster_from_json(text);
        const SpikeRaster perturbed = inject(original, event);
        artifact = raster_to_json(perturbed);
        if (with_impact) {
            if (scheme == Scheme::RateUnary) {
                before = rate_unary_decode(original);
                after = rate_unary_decode(perturbed);
            }
            else if (scheme == Scheme::Temporal) {
                before = temporal_positional_decode(original, base, mode);
                after = temporal_positional_decode(perturbed, base, mode);
            }
            else {
                const std::int64_t k = shape.k.value_or(original.neuron_count());
                const std::int64_t n =
                    shape.n_given ? shape.n : original.slot_count() / std::max<std::int64_t>(k, 1);
                const TemporalRateParams params{n, k};
                before = temporal_rate_decode(original, params, mode, CountPolicy::Lenient);
                after = temporal_rate_decode(perturbed, params, mode, CountPolicy::Lenient);
            }
        }
        break;
    }
    case Scheme::Unary:
        throw Error(Errc::InvalidParams, "unary streams take no injections");
    }

    if (with_impact) {
        nlohmann::ordered_json doc;
        doc["artifact"] = artifact;
        doc["original_decode"] = before.str();
        doc["perturbed_decode"] = after.str();
        doc["impact"] = impact(before, after).str();
        write_output(doc.dump(), common.output);
    }
    else {
        write_output(artifact, common.output);
    }
    return 0;
}

int run_sweep(const ShapeOpts& shape, const CommonOpts& common, const std::string& values,
              const std::string& errors, const std::string& events)
{
    SweepConfig config;
    config.scheme = parse_scheme(shape.scheme);
    config.n = effective_base(shape, config.scheme);
    config.k = shape.k.value_or(1);
    config.slot_cap = shape.slot_cap.value_or(0);
    config.model = parse_error_model(errors);
    config.mode = parse_decode_mode(shape.mode);
    config.seed = common.seed;
    config.jobs = common.jobs;

    if (values == "exhaustive") {
        config.exhaustive_values = true;
    }
    else if (values.rfind("sample:", 0) == 0) {
        config.exhaustive_values = false;
        try {
            config.sample_count = std::stoull(values.substr(7));
        }
        catch (const std::exception&) {
            throw Error(Errc::InvalidParams, "bad sample count in '" + values + "'");
        }
    }
    else {
        throw Error(Errc::InvalidParams,
                    "--values takes 'exhaustive' or 'sample:<count>', got '" + values + "'");
    }

    if (events == "exhaustive") {
        config.exhaustive_events = true;
    }
    else if (events == "sample") {
        config.exhaustive_events = false;
    }
    else {
        throw Error(Errc::InvalidParams,
                    "--events takes 'exhaustive' or 'sample', got '" + events + "'");
    }

    if ((!config.exhaustive_values || !config.exhaustive_events) && !common.seed_given) {
        throw Error(Errc::InvalidParams, "sampled sweeps require an explicit --seed");
    }

    write_output(sweep_report_to_json(sweep(config)), common.output);
    return 0;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv)
{
    std::vector<std::int64_t> out;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            out.push_back(std::stoll(item));
        }
        catch (const std::exception&) {
            throw Error(Errc::InvalidParams, "bad integer '" + item + "'");
        }
    }
    if (out.empty()) {
        throw Error(Errc::InvalidParams, "empty list");
    }
    return out;
}

int run_bench_table1(const CommonOpts& common, const std::string& bases,
                     const std::string& digits)
{
    const auto base_list = parse_int_list(bases);
    std::int64_t from = 1;
    std::int64_t to = 1;
    const auto dots = digits.find("..");
    try {
        if (dots == std::string::npos) {
            from = to = std::stoll(digits);
        }
        else {
            from = std::stoll(digits.substr(0, dots));
            to = std::stoll(digits.substr(dots + 2));
        }
    }
    catch (const std::exception&) {
        throw Error(Errc::InvalidParams, "bad digit range '" + digits + "'");
    }
    const Table1Report report = table1_report(base_list, from, to);
    const std::string format = common.format.empty() ? "csv" : common.format;
    if (format == "csv") {
        write_output(table1_to_csv(report), common.output);
    }
    else if (format == "json") {
        write_output(table1_to_json(report), common.output);
    }
    else {
        throw Error(Errc::InvalidParams, "unknown format '" + format + "'");
    }
    return 0;
}

int run_bench_tradeoff(const CommonOpts& common, const std::string& values,
                       const std::string& schemes)
{
    std::vector<Value> value_list;
    std::stringstream value_stream(values);
    std::string item;
    while (std::getline(value_stream, item, ',')) {
        value_list.push_back(parse_cli_value(item));
    }
    std::vector<SchemeSpec> scheme_list;
    std::stringstream scheme_stream(schemes);
    while (std::getline(scheme_stream, item, ',')) {
        scheme_list.push_back(parse_scheme_spec(item));
    }
    const auto rows = tradeoff_report(value_list, scheme_list);
    const std::string format = common.format.empty() ? "csv" : common.format;
    if (format == "csv") {
        write_output(tradeoff_to_csv(rows), common.output);
    }
    else if (format == "json") {
        write_output(tradeoff_to_json(rows), common.output);
    }
    else {
        throw Error(Errc::InvalidParams, "unknown format '" + format + "'");
    }
    return 0;
}

int run_bench_measure(const ShapeOpts& shape, const CommonOpts& common,
                      const std::string& value_text)
{
    const Scheme scheme = parse_scheme(shape.scheme);
    MeasureParams params;
    if (shape.n_given || shape.base_given) {
        params.n = effective_base(shape, scheme);
    }
    params.k = shape.k;
    params.slot_cap = shape.slot_cap;
    const EncodingMetrics metrics = measure(parse_cli_value(value_text), scheme, params);
    const std::string format = common.format.empty() ? "csv" : common.format;
    if (format == "csv") {
        write_output(metrics_to_csv(metrics), common.output);
    }
    else if (format == "json") {
        write_output(metrics_to_json(metrics), common.output);
    }
    else {
        throw Error(Errc::InvalidParams, "unknown format '" + format + "'");
    }
    return 0;
}

int run_compare(const ShapeOpts& shape, const CommonOpts& common, const std::string& left,
                const std::string& right)
{
    const Scheme scheme = parse_scheme(shape.scheme);
    const SpikeRaster a = raster_from_json(read_input(left));
    const SpikeRaster b = raster_from_json(read_input(right));
    const std::int64_t base = effective_base(shape, scheme);
    write_output(comparison_tag(compare_encoded(a, b, base, scheme)), common.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spikenum: digit and spike-train number encodings"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    CommonOpts common;
    ShapeOpts shape;
    EventOpts event_opts;
    std::string value_text;
    std::string input = "-";
    std::string values_mode = "exhaustive";
    std::string events_mode = "exhaustive";
    std::string errors = "digit-flip";
    std::string to_scheme;
    std::string bases = "2,10";
    std::string digits = "1..20";
    std::string tradeoff_values;
    std::string tradeoff_schemes;
    std::string compare_left;
    std::string compare_right;
    std::uint64_t max_digits = kDefaultMaterializeCap;
    bool with_impact = false;

    app.add_option("--format", common.format, "output format: text|json|csv");
    app.add_option("--output", common.output, "output file ('-' = stdout)");
    app.add_option("--seed", common.seed, "sweep seed")
        ->each([&common](const std::string&) { common.seed_given = true; });
    app.add_option("--jobs", common.jobs, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);

    auto* encode = app.add_subcommand("encode", "encode a value into an artifact");
    add_shape_options(encode, shape);
    encode->add_option("--value", value_text, "decimal or <digits>_<base>")->required();
    encode->add_option("--max-digits", max_digits, "unary materialization cap");

    auto* decode = app.add_subcommand("decode", "decode an artifact back to a value");
    add_shape_options(decode, shape);
    decode->add_option("input", input, "artifact file ('-' = stdin)");

    auto* convert = app.add_subcommand("convert", "re-encode a digit artifact");
    convert->add_option("--to", to_scheme, "target scheme")->required();
    convert->add_option("--base", shape.base, "target positional base");
    convert->add_option("--n", shape.n, "target unary base (power of two)");
    convert->add_option("--k", shape.k, "target width");
    convert->add_option("--max-digits", max_digits, "unary materialization cap");
    convert->add_option("input", input, "artifact file ('-' = stdin)");

    auto* inject_cmd = app.add_subcommand("inject", "apply one fault to an artifact");
    add_shape_options(inject_cmd, shape);
    inject_cmd->add_option("--event", event_opts.kind,
                           "digit-flip|spike-insert|spike-delete|spike-shift")
        ->required();
    inject_cmd->add_option("--stream", event_opts.stream, "weight index of the stream");
    inject_cmd->add_option("--bit", event_opts.bit,
                           "bit offset (words: from the left; numerals: significance)");
    inject_cmd->add_option("--neuron", event_opts.neuron, "neuron index");
    inject_cmd->add_option("--slot", event_opts.slot, "slot index");
    inject_cmd->add_option("--delta", event_opts.delta, "shift distance in slots");
    inject_cmd->add_flag("--with-impact", with_impact,
                         "wrap the artifact in a JSON impact report");
    inject_cmd->add_option("input", input, "artifact file ('-' = stdin)");

    auto* sweep_cmd = app.add_subcommand("sweep", "fault-injection sweep");
    add_shape_options(sweep_cmd, shape);
    sweep_cmd->add_option("--values", values_mode, "exhaustive | sample:<count>");
    sweep_cmd->add_option("--errors", errors, "comma-separated event kinds");
    sweep_cmd->add_option("--events", events_mode, "exhaustive | sample");

    auto* bench = app.add_subcommand("bench", "compactness and latency reports");
    bench->require_subcommand(1);
    auto* table1 = bench->add_subcommand("table1", "unary length growth table");
    table1->add_option("--bases", bases, "comma-separated bases");
    table1->add_option("--digits", digits, "digit range, e.g. 1..20");
    auto* tradeoff = bench->add_subcommand("tradeoff", "cross-scheme comparison");
    tradeoff->add_option("--values", tradeoff_values, "comma-separated values")->required();
    tradeoff
        ->add_option("--schemes", tradeoff_schemes,
                     "comma-separated scheme specs, e.g. rate-unary,temporal-2")
        ->required();
    auto* measure_cmd = bench->add_subcommand("measure", "metrics of one encoded value");
    add_shape_options(measure_cmd, shape, false);
    measure_cmd->add_option("--value", value_text, "decimal or <digits>_<base>")
        ->required();

    auto* compare = app.add_subcommand("compare", "compare two encoded rasters");
    compare->add_option("--scheme", shape.scheme, "temporal | temporal-rate")->required();
    compare->add_option("--base", shape.base, "temporal base");
    compare->add_option("a", compare_left, "first raster JSON file")->required();
    compare->add_option("b", compare_right, "second raster JSON file")->required();

    try {
        app.parse(argc, argv);
        for (const auto* cmd :
             {encode, decode, inject_cmd, sweep_cmd, measure_cmd, compare, convert}) {
            if (cmd->parsed()) {
                if (cmd->get_option_no_throw("--n") != nullptr && cmd->count("--n") > 0) {
                    shape.n_given = true;
                }
                if (cmd->get_option_no_throw("--base") != nullptr &&
                    cmd->count("--base") > 0) {
                    shape.base_given = true;
                }
            }
        }

        if (encode->parsed()) {
            return run_encode(shape, common, value_text, max_digits);
        }
        if (decode->parsed()) {
            return run_decode(shape, common, input);
        }
        if (convert->parsed()) {
            return run_convert(to_scheme, shape, common, input, max_digits);
        }
        if (inject_cmd->parsed()) {
            return run_inject(shape, common, event_opts, input, with_impact);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep(shape, common, values_mode, errors, events_mode);
        }
        if (bench->parsed()) {
            if (table1->parsed()) {
                return run_bench_table1(common, bases, digits);
            }
            if (tradeoff->parsed()) {
                return run_bench_tradeoff(common, tradeoff_values, tradeoff_schemes);
            }
            if (measure_cmd->parsed()) {
                return run_bench_measure(shape, common, value_text);
            }
        }
        if (compare->parsed()) {
            return run_compare(shape, common, compare_left, compare_right);
        }
        return 2;
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == Errc::IoError ? 1 : 2;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
