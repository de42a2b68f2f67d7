#include "spikenum/raster.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace spikenum {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::int64_t>& SpikeRaster::slots(std::int64_t neuron) const
{
    if (neuron < 0 || neuron >= neuron_count()) {
        throw Error(Errc::OutOfBounds, "neuron " + std::to_string(neuron));
    }
    return spikes_[static_cast<std::size_t>(neuron)];
}

bool SpikeRaster::has_spike(std::int64_t neuron, std::int64_t slot) const
{
    const auto& row = slots(neuron);
    return std::binary_search(row.begin(), row.end(), slot);
}

bool SpikeRaster::empty() const
{
    return std::all_of(spikes_.begin(), spikes_.end(),
                       [](const auto& row) { return row.empty(); });
}

SpikeRasterBuilder::SpikeRasterBuilder(std::int64_t neuron_count, std::int64_t slot_count)
    : slot_count_(slot_count)
{
    if (neuron_count < 0 || slot_count < 0) {
        throw Error(Errc::InvalidParams, "negative raster dimensions");
    }
    spikes_.resize(static_cast<std::size_t>(neuron_count));
}

SpikeRasterBuilder::SpikeRasterBuilder(const SpikeRaster& raster)
    : slot_count_(raster.slot_count())
{
    spikes_.resize(static_cast<std::size_t>(raster.neuron_count()));
    for (std::int64_t i = 0; i < raster.neuron_count(); ++i) {
        const auto& row = raster.slots(i);
        spikes_[static_cast<std::size_t>(i)].insert(row.begin(), row.end());
    }
}

void SpikeRasterBuilder::check_coords(std::int64_t neuron, std::int64_t slot) const
{
    if (neuron < 0 || neuron >= static_cast<std::int64_t>(spikes_.size())) {
        throw Error(Errc::OutOfBounds,
                    "neuron " + std::to_string(neuron) + " not in [0, " +
                        std::to_string(spikes_.size()) + ")");
    }
    if (slot < 0 || slot >= slot_count_) {
        throw Error(Errc::OutOfBounds,
                    "slot " + std::to_string(slot) + " not in [0, " +
                        std::to_string(slot_count_) + ")");
    }
}

SpikeRasterBuilder& SpikeRasterBuilder::add(std::int64_t neuron, std::int64_t slot)
{
    check_coords(neuron, slot);
    if (!spikes_[static_cast<std::size_t>(neuron)].insert(slot).second) {
        throw Error(Errc::MalformedInput,
                    "duplicate spike (" + std::to_string(neuron) + ", " +
                        std::to_string(slot) + ")");
    }
    return *this;
}

SpikeRasterBuilder& SpikeRasterBuilder::remove(std::int64_t neuron, std::int64_t slot)
{
    check_coords(neuron, slot);
    if (spikes_[static_cast<std::size_t>(neuron)].erase(slot) == 0) {
        throw Error(Errc::OutOfBounds,
                    "no spike at (" + std::to_string(neuron) + ", " +
                        std::to_string(slot) + ")");
    }
    return *this;
}

bool SpikeRasterBuilder::has(std::int64_t neuron, std::int64_t slot) const
{
    check_coords(neuron, slot);
    return spikes_[static_cast<std::size_t>(neuron)].contains(slot);
}

SpikeRaster SpikeRasterBuilder::build() const
{
    SpikeRaster raster;
    raster.slot_count_ = slot_count_;
    raster.spikes_.reserve(spikes_.size());
    for (const auto& row : spikes_) {
        raster.spikes_.emplace_back(row.begin(), row.end());
    }
    return raster;
}

FirstSpikeProfile first_spike_times(const SpikeRaster& raster)
{
    FirstSpikeProfile profile(static_cast<std::size_t>(raster.neuron_count()));
    for (std::int64_t i = 0; i < raster.neuron_count(); ++i) {
        const auto& row = raster.slots(i);
        if (!row.empty()) {
            profile[static_cast<std::size_t>(i)] = row.front();
        }
    }
    return profile;
}

std::vector<std::int64_t> spike_counts(const SpikeRaster& raster)
{
    std::vector<std::int64_t> counts;
    counts.reserve(static_cast<std::size_t>(raster.neuron_count()));
    for (std::int64_t i = 0; i < raster.neuron_count(); ++i) {
        counts.push_back(static_cast<std::int64_t>(raster.slots(i).size()));
    }
    return counts;
}

std::string raster_to_json(const SpikeRaster& raster)
{
    ordered_json doc;
    doc["neuron_count"] = raster.neuron_count();
    doc["slot_count"] = raster.slot_count();
    auto rows = ordered_json::array();
    for (std::int64_t i = 0; i < raster.neuron_count(); ++i) {
        rows.push_back(raster.slots(i));
    }
    doc["spikes"] = std::move(rows);
    return doc.dump();
}

SpikeRaster raster_from_json(std::string_view text)
{
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    }
    catch (const nlohmann::json::exception& e) {
        throw Error(Errc::MalformedInput, e.what());
    }
    if (!doc.is_object() || !doc.contains("neuron_count") ||
        !doc.contains("slot_count") || !doc.contains("spikes")) {
        throw Error(Errc::MalformedInput,
                    "raster JSON needs neuron_count, slot_count and spikes");
    }
    if (!doc["neuron_count"].is_number_integer() ||
        !doc["slot_count"].is_number_integer() || !doc["spikes"].is_array()) {
        throw Error(Errc::MalformedInput, "raster JSON field has wrong type");
    }
    const auto neurons = doc["neuron_count"].get<std::int64_t>();
    const auto slots = doc["slot_count"].get<std::int64_t>();
    if (neurons < 0 || slots < 0) {
        throw Error(Errc::MalformedInput, "negative raster dimensions");
    }
    const auto& rows = doc["spikes"];
    if (static_cast<std::int64_t>(rows.size()) != neurons) {
        throw Error(Errc::MalformedInput,
                    "spikes has " + std::to_string(rows.size()) +
                        " rows, expected " + std::to_string(neurons));
    }
    SpikeRasterBuilder builder(neurons, slots);
    for (std::int64_t i = 0; i < neurons; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array()) {
            throw Error(Errc::MalformedInput,
                        "spikes[" + std::to_string(i) + "] is not an array");
        }
        for (const auto& slot : row) {
            if (!slot.is_number_integer()) {
                throw Error(Errc::MalformedInput,
                            "spikes[" + std::to_string(i) + "] holds a non-integer slot");
            }
            builder.add(i, slot.get<std::int64_t>());
        }
    }
    return builder.build();
}

std::string raster_to_csv(const SpikeRaster& raster)
{
    std::string out = "neuron,slot\n";
    for (std::int64_t i = 0; i < raster.neuron_count(); ++i) {
        for (std::int64_t slot : raster.slots(i)) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(slot);
            out += '\n';
        }
    }
    return out;
}

}  // namespace spikenum
