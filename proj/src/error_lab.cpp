#include "spikenum/error_lab.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "spikenum/rng.hpp"
#include "spikenum/spike_codecs.hpp"

namespace spikenum {

using ordered_json = nlohmann::ordered_json;

namespace {

// Only the sampled paths are allowed to be slow; exhaustive sweeps must
// enumerate the whole space, so refuse absurd ones instead of hanging.
constexpr std::uint64_t kExhaustiveValueLimit = std::uint64_t{1} << 22;

[[noreturn]] void invalid_event(const std::string& what)
{
    throw Error(Errc::InvalidEvent, what);
}

}  // namespace

std::string event_description(const ErrorEvent& event)
{
    std::ostringstream out;
    std::visit(
        [&out](const auto& e) {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, DigitFlip>) {
                out << "digit-flip stream " << e.stream << " bit " << e.bit;
            }
            else if constexpr (std::is_same_v<E, SpikeInsert>) {
                out << "spike-insert (" << e.neuron << ", " << e.slot << ")";
            }
            else if constexpr (std::is_same_v<E, SpikeDelete>) {
                out << "spike-delete (" << e.neuron << ", " << e.slot << ")";
            }
            else {
                out << "spike-shift (" << e.neuron << ", " << e.from_slot << ") by "
                    << e.delta;
            }
        },
        event);
    return out.str();
}

UnaryPositionalWord inject(const UnaryPositionalWord& word, const ErrorEvent& event)
{
    const auto* flip = std::get_if<DigitFlip>(&event);
    if (flip == nullptr) {
        invalid_event("only digit flips apply to unary-positional words");
    }
    if (flip->stream < 0 || flip->stream >= word.k()) {
        invalid_event("stream " + std::to_string(flip->stream) + " not in [0, " +
                      std::to_string(word.k()) + ")");
    }
    if (flip->bit < 0 || flip->bit >= word.n) {
        invalid_event("bit " + std::to_string(flip->bit) + " not in [0, " +
                      std::to_string(word.n) + ")");
    }
    UnaryPositionalWord out = word;
    // Weight index counts from the right; streams[] prints left to right.
    auto& stream = out.streams[static_cast<std::size_t>(word.k() - 1 - flip->stream)];
    const auto bit = static_cast<std::size_t>(flip->bit);
    stream[bit] = !stream[bit];
    return out;
}

PositionalNumeral inject(const PositionalNumeral& numeral, const ErrorEvent& event)
{
    const auto* flip = std::get_if<DigitFlip>(&event);
    if (flip == nullptr) {
        invalid_event("only digit flips apply to positional numerals");
    }
    if (numeral.base != 2) {
        invalid_event("digit flips are defined for binary numerals, base is " +
                      std::to_string(numeral.base));
    }
    if (flip->stream != 0) {
        invalid_event("numerals have a single digit stream");
    }
    const auto width = static_cast<std::int64_t>(numeral.digits.size());
    if (flip->bit < 0 || flip->bit >= width) {
        invalid_event("bit " + std::to_string(flip->bit) + " not in [0, " +
                      std::to_string(width) + ")");
    }
    PositionalNumeral out = numeral;
    // bit indexes significance: 0 flips the rightmost digit.
    auto& digit = out.digits[static_cast<std::size_t>(width - 1 - flip->bit)];
    digit = digit == 0 ? 1 : 0;
    return out;
}

SpikeRaster inject(const SpikeRaster& raster, const ErrorEvent& event)
{
    auto check_range = [&raster](std::int64_t neuron, std::int64_t slot) {
        if (neuron < 0 || neuron >= raster.neuron_count() || slot < 0 ||
            slot >= raster.slot_count()) {
            invalid_event("coordinates (" + std::to_string(neuron) + ", " +
                          std::to_string(slot) + ") outside " +
                          std::to_string(raster.neuron_count()) + "x" +
                          std::to_string(raster.slot_count()) + " raster");
        }
    };

    if (const auto* ins = std::get_if<SpikeInsert>(&event)) {
        check_range(ins->neuron, ins->slot);
        if (raster.has_spike(ins->neuron, ins->slot)) {
            invalid_event("insert on occupied slot (" + std::to_string(ins->neuron) +
                          ", " + std::to_string(ins->slot) + ")");
        }
        return SpikeRasterBuilder(raster).add(ins->neuron, ins->slot).build();
    }
    if (const auto* del = std::get_if<SpikeDelete>(&event)) {
        check_range(del->neuron, del->slot);
        if (!raster.has_spike(del->neuron, del->slot)) {
            invalid_event("delete of missing spike (" + std::to_string(del->neuron) +
                          ", " + std::to_string(del->slot) + ")");
        }
        return SpikeRasterBuilder(raster).remove(del->neuron, del->slot).build();
    }
    if (const auto* shift = std::get_if<SpikeShift>(&event)) {
        check_range(shift->neuron, shift->from_slot);
        if (shift->delta == 0) {
            invalid_event("shift by zero slots");
        }
        if (!raster.has_spike(shift->neuron, shift->from_slot)) {
            invalid_event("shift of missing spike (" + std::to_string(shift->neuron) +
                          ", " + std::to_string(shift->from_slot) + ")");
        }
        const std::int64_t target = shift->from_slot + shift->delta;
        check_range(shift->neuron, target);
        if (raster.has_spike(shift->neuron, target)) {
            invalid_event("shift lands on occupied slot (" +
                          std::to_string(shift->neuron) + ", " + std::to_string(target) +
                          ")");
        }
        return SpikeRasterBuilder(raster)
            .remove(shift->neuron, shift->from_slot)
            .add(shift->neuron, target)
            .build();
    }
    invalid_event("digit flips do not apply to spike rasters");
}

ErrorModel parse_error_model(const std::string& csv)
{
    ErrorModel model;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t end = std::min(csv.find(',', start), csv.size());
        const std::string kind = csv.substr(start, end - start);
        if (kind == "digit-flip") {
            model.digit_flip = true;
        }
        else if (kind == "spike-insert") {
            model.spike_insert = true;
        }
        else if (kind == "spike-delete") {
            model.spike_delete = true;
        }
        else if (kind == "spike-shift") {
            model.spike_shift = true;
        }
        else if (!kind.empty()) {
            throw Error(Errc::InvalidParams, "unknown error kind '" + kind + "'");
        }
        start = end + 1;
    }
    if (!model.digit_flip && !model.spike_insert && !model.spike_delete &&
        !model.spike_shift) {
        throw Error(Errc::InvalidParams, "error model selects no event kind");
    }
    return model;
}

std::string error_model_tag(const ErrorModel& model)
{
    std::string out;
    auto append = [&out](const char* kind) {
        if (!out.empty()) {
            out += ',';
        }
        out += kind;
    };
    if (model.digit_flip) append("digit-flip");
    if (model.spike_insert) append("spike-insert");
    if (model.spike_delete) append("spike-delete");
    if (model.spike_shift) append("spike-shift");
    return out;
}

std::vector<ErrorEvent> enumerate_events(const UnaryPositionalWord& word,
                                         const ErrorModel& model)
{
    std::vector<ErrorEvent> events;
    if (!model.digit_flip) {
        return events;
    }
    events.reserve(static_cast<std::size_t>(word.k() * word.n));
    for (std::int64_t display = 0; display < word.k(); ++display) {
        const std::int64_t stream = word.k() - 1 - display;
        for (std::int64_t bit = 0; bit < word.n; ++bit) {
            events.push_back(DigitFlip{stream, bit});
        }
    }
    return events;
}

std::vector<ErrorEvent> enumerate_events(const PositionalNumeral& numeral,
                                         const ErrorModel& model)
{
    std::vector<ErrorEvent> events;
    if (!model.digit_flip) {
        return events;
    }
    const auto width = static_cast<std::int64_t>(numeral.digits.size());
    for (std::int64_t bit = 0; bit < width; ++bit) {
        events.push_back(DigitFlip{0, bit});
    }
    return events;
}

std::vector<ErrorEvent> enumerate_events(const SpikeRaster& raster,
                                         const ErrorModel& model)
{
    std::vector<ErrorEvent> events;
    if (model.spike_insert) {
        for (std::int64_t neuron = 0; neuron < raster.neuron_count(); ++neuron) {
            for (std::int64_t slot = 0; slot < raster.slot_count(); ++slot) {
                if (!raster.has_spike(neuron, slot)) {
                    events.push_back(SpikeInsert{neuron, slot});
                }
            }
        }
    }
    if (model.spike_delete) {
        for (std::int64_t neuron = 0; neuron < raster.neuron_count(); ++neuron) {
            for (std::int64_t slot : raster.slots(neuron)) {
                events.push_back(SpikeDelete{neuron, slot});
            }
        }
    }
    if (model.spike_shift) {
        for (std::int64_t neuron = 0; neuron < raster.neuron_count(); ++neuron) {
            for (std::int64_t from : raster.slots(neuron)) {
                for (std::int64_t target = 0; target < raster.slot_count(); ++target) {
                    if (target != from && !raster.has_spike(neuron, target)) {
                        events.push_back(SpikeShift{neuron, from, target - from});
                    }
                }
            }
        }
    }
    return events;
}

namespace {

struct SweepAccumulator {
    std::uint64_t trials = 0;
    std::uint64_t strict_rejections = 0;
    Value abs_sum = 0;
    Value max_abs = 0;
    std::map<Value, std::uint64_t> histogram;

    void record(const Value& delta)
    {
        const Value a = delta < 0 ? Value(-delta) : delta;
        ++trials;
        abs_sum += a;
        if (a > max_abs) {
            max_abs = a;
        }
        ++histogram[a];
    }

    void merge(const SweepAccumulator& other)
    {
        trials += other.trials;
        strict_rejections += other.strict_rejections;
        abs_sum += other.abs_sum;
        if (other.max_abs > max_abs) {
            max_abs = other.max_abs;
        }
        for (const auto& [key, count] : other.histogram) {
            histogram[key] += count;
        }
    }
};

void check_sweep_params(const SweepConfig& config)
{
    switch (config.scheme) {
    case Scheme::UnaryPositional:
    case Scheme::Positional:
    case Scheme::TemporalRate:
        if (config.n < 2 || !is_power_of_two(config.n)) {
            throw Error(Errc::InvalidParams,
                        "n must be a power of two >= 2, got " + std::to_string(config.n));
        }
        break;
    case Scheme::Temporal:
        if (config.n < 2) {
            throw Error(Errc::InvalidParams,
                        "base must be >= 2, got " + std::to_string(config.n));
        }
        break;
    case Scheme::RateUnary:
        if (config.slot_cap < 0) {
            throw Error(Errc::InvalidParams, "slot cap must be >= 0");
        }
        break;
    case Scheme::Unary:
        throw Error(Errc::InvalidParams,
                    "unary streams have no fault sweep; rate-unary is the spiking twin");
    }
    if (config.scheme != Scheme::RateUnary && config.k < 1) {
        throw Error(Errc::InvalidParams, "k must be >= 1, got " + std::to_string(config.k));
    }
    if (!config.exhaustive_values && config.sample_count == 0) {
        throw Error(Errc::InvalidParams, "sampled sweep needs a sample count");
    }
}

// Number of representable values under the config.
Value value_space(const SweepConfig& config)
{
    if (config.scheme == Scheme::RateUnary) {
        return Value(config.slot_cap) + 1;
    }
    return pow_value(Value(config.n), static_cast<unsigned>(config.k));
}

// Uniform value: digit-wise draw, most significant first.
Value sample_value(const SweepConfig& config, SplitMix64& rng)
{
    if (config.scheme == Scheme::RateUnary) {
        return Value(rng.next_below(static_cast<std::uint64_t>(config.slot_cap) + 1));
    }
    Value v = 0;
    for (std::int64_t i = 0; i < config.k; ++i) {
        v = v * config.n + rng.next_below(static_cast<std::uint64_t>(config.n));
    }
    return v;
}

// One (value, event) measurement.
void run_event(const SweepConfig& config, const Value& v,
               const UnaryPositionalWord* word, const PositionalNumeral* numeral,
               const SpikeRaster* raster, const ErrorEvent& event,
               SweepAccumulator& acc)
{
    Value decoded;
    switch (config.scheme) {
    case Scheme::UnaryPositional:
        decoded = unary_positional_decode(inject(*word, event));
        break;
    case Scheme::Positional:
        decoded = positional_decode(inject(*numeral, event));
        break;
    case Scheme::RateUnary:
        decoded = rate_unary_decode(inject(*raster, event));
        break;
    case Scheme::Temporal:
        decoded = temporal_positional_decode(inject(*raster, event), config.n, config.mode);
        break;
    case Scheme::TemporalRate: {
        const SpikeRaster perturbed = inject(*raster, event);
        const TemporalRateParams params{config.n, config.k};
        const auto counts = spike_counts(perturbed);
        if (std::any_of(counts.begin(), counts.end(),
                        [&params](std::int64_t c) { return c >= params.n; })) {
            ++acc.strict_rejections;
        }
        decoded = temporal_rate_decode(perturbed, params, config.mode, CountPolicy::Lenient);
        break;
    }
    case Scheme::Unary:
        return;  // rejected earlier
    }
    acc.record(impact(v, decoded));
}

void run_trial(const SweepConfig& config, std::uint64_t trial, SweepAccumulator& acc)
{
    SplitMix64 rng(config.seed ^ trial);
    const Value v = config.exhaustive_values ? Value(trial) : sample_value(config, rng);

    UnaryPositionalWord word;
    PositionalNumeral numeral;
    SpikeRaster raster;
    std::vector<ErrorEvent> events;
    switch (config.scheme) {
    case Scheme::UnaryPositional:
        word = binary_to_unary_positional(
            positional_encode(v, 2,
                              static_cast<std::size_t>(config.k) *
                                  static_cast<std::size_t>(log2_exact(config.n))),
            config.n);
        events = enumerate_events(word, config.model);
        break;
    case Scheme::Positional:
        numeral = positional_encode(v, 2,
                                    static_cast<std::size_t>(config.k) *
                                        static_cast<std::size_t>(log2_exact(config.n)));
        events = enumerate_events(numeral, config.model);
        break;
    case Scheme::RateUnary:
        raster = rate_unary_encode(v, config.slot_cap);
        events = enumerate_events(raster, config.model);
        break;
    case Scheme::Temporal:
        raster = temporal_positional_encode(v, config.n, config.k);
        events = enumerate_events(raster, config.model);
        break;
    case Scheme::TemporalRate:
        raster = temporal_rate_encode(v, TemporalRateParams{config.n, config.k});
        events = enumerate_events(raster, config.model);
        break;
    case Scheme::Unary:
        return;
    }

    if (config.exhaustive_events) {
        for (const ErrorEvent& event : events) {
            run_event(config, v, &word, &numeral, &raster, event, acc);
        }
    }
    else if (!events.empty()) {
        const ErrorEvent& event = events[rng.next_below(events.size())];
        run_event(config, v, &word, &numeral, &raster, event, acc);
    }
}

}  // namespace

SweepReport sweep(const SweepConfig& config)
{
    check_sweep_params(config);

    std::uint64_t value_trials;
    if (config.exhaustive_values) {
        const Value space = value_space(config);
        if (space > kExhaustiveValueLimit) {
            throw Error(Errc::InvalidParams,
                        "value space " + space.str() +
                            " too large for an exhaustive sweep; sample instead");
        }
        value_trials = static_cast<std::uint64_t>(space);
    }
    else {
        value_trials = config.sample_count;
    }

    const int jobs = std::max(1, config.jobs);
    std::vector<SweepAccumulator> partials(static_cast<std::size_t>(jobs));
    if (jobs == 1) {
        for (std::uint64_t t = 0; t < value_trials; ++t) {
            run_trial(config, t, partials[0]);
        }
    }
    else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) {
            workers.emplace_back([&config, &partials, value_trials, jobs, j] {
                const std::uint64_t lo = value_trials * static_cast<std::uint64_t>(j) /
                                         static_cast<std::uint64_t>(jobs);
                const std::uint64_t hi = value_trials *
                                         (static_cast<std::uint64_t>(j) + 1) /
                                         static_cast<std::uint64_t>(jobs);
                for (std::uint64_t t = lo; t < hi; ++t) {
                    run_trial(config, t, partials[static_cast<std::size_t>(j)]);
                }
            });
        }
        for (auto& worker : workers) {
            worker.join();
        }
    }

    SweepAccumulator total;
    for (const auto& partial : partials) {
        total.merge(partial);
    }

    SweepReport report;
    report.scheme = config.scheme;
    report.n = config.n;
    report.k = config.k;
    report.slot_cap = config.slot_cap;
    report.mode = config.mode;
    report.model = error_model_tag(config.model);
    report.values_mode = config.exhaustive_values
                             ? "exhaustive"
                             : "sample:" + std::to_string(config.sample_count);
    report.events_mode = config.exhaustive_events ? "exhaustive" : "sample";
    report.trials = total.trials;
    report.seed = config.seed;
    report.max_abs_impact = total.max_abs;
    report.mean_abs_impact =
        total.trials == 0 ? Ratio(0) : Ratio(total.abs_sum, Value(total.trials));
    report.histogram = std::move(total.histogram);
    report.strict_rejections = total.strict_rejections;
    report.generator = SplitMix64::kName;
    return report;
}

std::string sweep_report_to_json(const SweepReport& report)
{
    ordered_json params;
    params["n"] = report.n;
    params["k"] = report.k;
    params["slot_cap"] = report.slot_cap;
    params["mode"] = decode_mode_tag(report.mode);
    params["model"] = report.model;
    params["values"] = report.values_mode;
    params["events"] = report.events_mode;

    ordered_json hist;
    for (const auto& [key, count] : report.histogram) {
        hist[key.str()] = count;
    }

    ordered_json doc;
    doc["scheme"] = scheme_tag(report.scheme);
    doc["params"] = std::move(params);
    doc["trials"] = report.trials;
    doc["seed"] = report.seed;
    doc["max_abs_impact"] = report.max_abs_impact.str();
    doc["mean_abs_impact"] = ratio_to_string(report.mean_abs_impact);
    doc["histogram"] = std::move(hist);
    doc["strict_rejections"] = report.strict_rejections;
    doc["generator"] = report.generator;
    return doc.dump();
}

}  // namespace spikenum
