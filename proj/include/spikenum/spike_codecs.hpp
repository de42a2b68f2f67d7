#pragma once

#include <cstdint>
#include <string>

#include "spikenum/raster.hpp"
#include "spikenum/scheme.hpp"
#include "spikenum/value.hpp"

namespace spikenum {

// Shape of a temporal-rate bundle: k neurons, each owning a disjoint
// window of n slots, total timeline k*n.
struct TemporalRateParams {
    std::int64_t n = 2;  // base == window length; power of two >= 2
    std::int64_t k = 1;  // neuron count == stream count

    std::int64_t timeline() const { return n * k; }
};

enum class ComparisonOutcome {
    Less,
    Equal,
    Greater,
    Ambiguous,
};

const char* comparison_tag(ComparisonOutcome outcome);

// Whether a decode rejects out-of-range digit counts (Strict) or clamps
// them to n-1 (Lenient; used by fault sweeps so no trial aborts).
enum class CountPolicy {
    Strict,
    Lenient,
};

// --- rate (unary) ---

// One neuron, v spikes filling slots 0..v-1, slot_count == slot_cap.
SpikeRaster rate_unary_encode(const Value& v, std::int64_t slot_cap);

// Total spike count; placement is irrelevant.
Value rate_unary_decode(const SpikeRaster& raster);

// --- temporal (positional) ---

// k neurons over k slots; neuron i carries weight base^(k-1-i) and spikes
// at slot i iff digit i of v (MSB first) is nonzero. Lossless only for
// base 2; higher bases discard nonzero digit magnitudes.
SpikeRaster temporal_positional_encode(const Value& v, std::int64_t base,
                                       std::int64_t k);

// FixedSchedule: neuron i contributes base^(k-1-i) iff it spikes at all.
// FirstSpikeOrder: spiking neurons ranked by earliest first spike (ties by
// index) take weights base^(k-1), base^(k-2), ... in rank order; silent
// neurons contribute nothing. Spikes after a neuron's first are ignored.
Value temporal_positional_decode(const SpikeRaster& raster, std::int64_t base,
                                 DecodeMode mode = DecodeMode::FixedSchedule);

// The 0/1 pattern of nonzero digits of v, MSB first: everything a base>2
// temporal encoding preserves. Values sharing a pattern collide.
std::string temporal_lossy_class(const Value& v, std::int64_t base, std::int64_t k);

// --- temporal-rate ---

// Neuron i fires digit_i spikes packed at the end of its own window
// [i*n, (i+1)*n). Windows are disjoint, so first-spike order follows
// weight order. Lossless for every v < n^k.
SpikeRaster temporal_rate_encode(const Value& v, const TemporalRateParams& params);

// FixedSchedule: sum of count(neuron i) * n^(k-1-i).
// FirstSpikeOrder: spikers ranked by earliest spike (ties by index) take
// the highest weights; silent neurons take the remaining weights in index
// order and contribute count 0. CountOverflow under Strict when a count
// reaches n.
Value temporal_rate_decode(const SpikeRaster& raster, const TemporalRateParams& params,
                           DecodeMode mode = DecodeMode::FixedSchedule,
                           CountPolicy policy = CountPolicy::Strict);

// --- comparison ---

// Temporal scheme: decided by the highest-weight spiking neuron when they
// differ; equal positions compare losslessly in base 2 and are Ambiguous
// in higher bases (identical rasters compare Equal). Temporal-rate scheme:
// always decided by exact decoded values.
ComparisonOutcome compare_encoded(const SpikeRaster& a, const SpikeRaster& b,
                                  std::int64_t base, Scheme scheme);

}  // namespace spikenum
