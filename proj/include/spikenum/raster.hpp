#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spikenum/error.hpp"

namespace spikenum {

class SpikeRasterBuilder;

// Bundle of neurons over discrete unit time slots, at most one spike per
// (neuron, slot). Immutable once built; slot lists are kept sorted.
class SpikeRaster {
public:
    SpikeRaster() = default;

    std::int64_t neuron_count() const { return static_cast<std::int64_t>(spikes_.size()); }
    std::int64_t slot_count() const { return slot_count_; }

    const std::vector<std::int64_t>& slots(std::int64_t neuron) const;
    bool has_spike(std::int64_t neuron, std::int64_t slot) const;
    bool empty() const;

    bool operator==(const SpikeRaster&) const = default;

private:
    friend class SpikeRasterBuilder;

    std::int64_t slot_count_ = 0;
    std::vector<std::vector<std::int64_t>> spikes_;  // ascending slots per neuron
};

class SpikeRasterBuilder {
public:
    SpikeRasterBuilder(std::int64_t neuron_count, std::int64_t slot_count);
    explicit SpikeRasterBuilder(const SpikeRaster& raster);

    // OutOfBounds on bad coordinates, MalformedInput on duplicates.
    SpikeRasterBuilder& add(std::int64_t neuron, std::int64_t slot);
    // OutOfBounds when no such spike exists.
    SpikeRasterBuilder& remove(std::int64_t neuron, std::int64_t slot);

    bool has(std::int64_t neuron, std::int64_t slot) const;

    SpikeRaster build() const;

private:
    void check_coords(std::int64_t neuron, std::int64_t slot) const;

    std::int64_t slot_count_;
    std::vector<std::set<std::int64_t>> spikes_;
};

// Earliest spike slot per neuron; nullopt for silent neurons.
using FirstSpikeProfile = std::vector<std::optional<std::int64_t>>;

FirstSpikeProfile first_spike_times(const SpikeRaster& raster);

std::vector<std::int64_t> spike_counts(const SpikeRaster& raster);

// JSON schema (stable): {"neuron_count": N, "slot_count": T,
// "spikes": [[s00, s01, ...], ...]} with ascending slot lists.
std::string raster_to_json(const SpikeRaster& raster);
SpikeRaster raster_from_json(std::string_view text);

// One row per spike, "neuron,slot" header, sorted by (neuron, slot).
std::string raster_to_csv(const SpikeRaster& raster);

}  // namespace spikenum
