#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "spikenum/numeral.hpp"
#include "spikenum/raster.hpp"
#include "spikenum/scheme.hpp"
#include "spikenum/value.hpp"

namespace spikenum {

// One atomic perturbation.
//
// DigitFlip addresses digit words: `stream` is the weight index (the
// stream carrying n^stream), `bit` the offset from the printed left end.
// On a positional numeral `stream` must be 0 and `bit` is the digit's
// significance (0 = least significant); only binary numerals can flip.
struct DigitFlip {
    std::int64_t stream = 0;
    std::int64_t bit = 0;

    bool operator==(const DigitFlip&) const = default;
};

struct SpikeInsert {
    std::int64_t neuron = 0;
    std::int64_t slot = 0;

    bool operator==(const SpikeInsert&) const = default;
};

struct SpikeDelete {
    std::int64_t neuron = 0;
    std::int64_t slot = 0;

    bool operator==(const SpikeDelete&) const = default;
};

// Moves an existing spike by delta slots within its neuron's row.
struct SpikeShift {
    std::int64_t neuron = 0;
    std::int64_t from_slot = 0;
    std::int64_t delta = 0;

    bool operator==(const SpikeShift&) const = default;
};

using ErrorEvent = std::variant<DigitFlip, SpikeInsert, SpikeDelete, SpikeShift>;

std::string event_description(const ErrorEvent& event);

// Each overload applies exactly one perturbation and leaves everything
// else untouched. InvalidEvent on out-of-range coordinates, deleting a
// missing spike, or inserting/landing on an occupied slot.
UnaryPositionalWord inject(const UnaryPositionalWord& word, const ErrorEvent& event);
PositionalNumeral inject(const PositionalNumeral& numeral, const ErrorEvent& event);
SpikeRaster inject(const SpikeRaster& raster, const ErrorEvent& event);

// Signed exact difference: perturbed_decoded - original_value.
inline Value impact(const Value& original_value, const Value& perturbed_decoded)
{
    return perturbed_decoded - original_value;
}

// Which event kinds a sweep may inject.
struct ErrorModel {
    bool digit_flip = false;
    bool spike_insert = false;
    bool spike_delete = false;
    bool spike_shift = false;
};

ErrorModel parse_error_model(const std::string& csv);
std::string error_model_tag(const ErrorModel& model);

// All valid events of the model for one artifact, in canonical order
// (flips by printed position; then inserts, deletes, shifts by ascending
// coordinates). The order is part of the reproducibility contract: a
// sampled trial picks the u-th entry of this list.
std::vector<ErrorEvent> enumerate_events(const UnaryPositionalWord& word,
                                         const ErrorModel& model);
std::vector<ErrorEvent> enumerate_events(const PositionalNumeral& numeral,
                                         const ErrorModel& model);
std::vector<ErrorEvent> enumerate_events(const SpikeRaster& raster,
                                         const ErrorModel& model);

struct SweepConfig {
    Scheme scheme = Scheme::UnaryPositional;
    std::int64_t n = 2;         // unary base / temporal base / window length
    std::int64_t k = 1;         // streams / neurons / digit width
    std::int64_t slot_cap = 0;  // rate-unary only
    bool exhaustive_values = true;
    std::uint64_t sample_count = 0;  // trials when sampling values
    ErrorModel model;
    bool exhaustive_events = true;  // every valid event vs one sampled per value
    DecodeMode mode = DecodeMode::FixedSchedule;
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct SweepReport {
    Scheme scheme = Scheme::UnaryPositional;
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::int64_t slot_cap = 0;
    DecodeMode mode = DecodeMode::FixedSchedule;
    std::string model;
    std::string values_mode;  // "exhaustive" or "sample:<count>"
    std::string events_mode;  // "exhaustive" or "sample"
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Value max_abs_impact = 0;
    Ratio mean_abs_impact = 0;
    std::map<Value, std::uint64_t> histogram;  // |impact| -> occurrences
    std::uint64_t strict_rejections = 0;       // lenient decodes that clamped
    std::string generator;

    bool operator==(const SweepReport&) const = default;
};

// Runs one deterministic fault-injection sweep. Each trial encodes a
// value, applies one event, decodes (leniently for temporal-rate) and
// records |impact|. Trial t draws its randomness from SplitMix64 seeded
// with (seed XOR t), so reports are identical at any job count.
SweepReport sweep(const SweepConfig& config);

std::string sweep_report_to_json(const SweepReport& report);

}  // namespace spikenum
