#include "spikenum/spike_codecs.hpp"

#include <algorithm>
#include <numeric>

#include "spikenum/numeral.hpp"

namespace spikenum {

namespace {

void check_temporal_rate_params(const TemporalRateParams& params)
{
    if (params.n < 2 || !is_power_of_two(params.n)) {
        throw Error(Errc::InvalidParams,
                    "temporal-rate base must be a power of two >= 2, got " +
                        std::to_string(params.n));
    }
    if (params.k < 1) {
        throw Error(Errc::InvalidParams,
                    "temporal-rate needs k >= 1, got " + std::to_string(params.k));
    }
}

// Digits of v, MSB first, exactly k of them. Overflow when v >= base^k.
std::vector<std::int64_t> digits_for(const Value& v, std::int64_t base, std::int64_t k)
{
    if (base < 2) {
        throw Error(Errc::InvalidBase, "base must be >= 2, got " + std::to_string(base));
    }
    if (k < 1) {
        throw Error(Errc::InvalidParams, "k must be >= 1, got " + std::to_string(k));
    }
    if (v < 0) {
        throw Error(Errc::InvalidParams, "value must be nonnegative, got " + v.str());
    }
    if (v >= pow_value(Value(base), static_cast<unsigned>(k))) {
        throw Error(Errc::Overflow,
                    v.str() + " needs more than " + std::to_string(k) +
                        " digits in base " + std::to_string(base));
    }
    return positional_encode(v, base, static_cast<std::size_t>(k)).digits;
}

// Neuron order for FirstSpikeOrder decode: spikers by (first spike, index),
// then silent neurons by index.
std::vector<std::int64_t> rank_order(const SpikeRaster& raster)
{
    const FirstSpikeProfile first = first_spike_times(raster);
    std::vector<std::int64_t> order(first.size());
    std::iota(order.begin(), order.end(), std::int64_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&first](std::int64_t a, std::int64_t b) {
                         const auto& fa = first[static_cast<std::size_t>(a)];
                         const auto& fb = first[static_cast<std::size_t>(b)];
                         if (fa.has_value() != fb.has_value()) {
                             return fa.has_value();
                         }
                         if (fa && fb && *fa != *fb) {
                             return *fa < *fb;
                         }
                         return a < b;
                     });
    return order;
}

}  // namespace

const char* comparison_tag(ComparisonOutcome outcome)
{
    switch (outcome) {
    case ComparisonOutcome::Less: return "LESS";
    case ComparisonOutcome::Equal: return "EQUAL";
    case ComparisonOutcome::Greater: return "GREATER";
    case ComparisonOutcome::Ambiguous: return "AMBIGUOUS";
    }
    return "?";
}

SpikeRaster rate_unary_encode(const Value& v, std::int64_t slot_cap)
{
    if (slot_cap < 0) {
        throw Error(Errc::InvalidParams, "slot cap must be >= 0");
    }
    if (v < 0) {
        throw Error(Errc::InvalidParams, "value must be nonnegative, got " + v.str());
    }
    if (v > slot_cap) {
        throw Error(Errc::CapacityExceeded,
                    v.str() + " spikes do not fit in " + std::to_string(slot_cap) +
                        " slots");
    }
    SpikeRasterBuilder builder(1, slot_cap);
    const auto spikes = static_cast<std::int64_t>(v);
    for (std::int64_t slot = 0; slot < spikes; ++slot) {
        builder.add(0, slot);
    }
    return builder.build();
}

Value rate_unary_decode(const SpikeRaster& raster)
{
    if (raster.neuron_count() != 1) {
        throw Error(Errc::WrongBundleSize,
                    "rate-unary bundle has one neuron, raster has " +
                        std::to_string(raster.neuron_count()));
    }
    return Value(raster.slots(0).size());
}

SpikeRaster temporal_positional_encode(const Value& v, std::int64_t base, std::int64_t k)
{
    const auto digits = digits_for(v, base, k);
    SpikeRasterBuilder builder(k, k);
    for (std::int64_t i = 0; i < k; ++i) {
        if (digits[static_cast<std::size_t>(i)] != 0) {
            builder.add(i, i);
        }
    }
    return builder.build();
}

Value temporal_positional_decode(const SpikeRaster& raster, std::int64_t base,
                                 DecodeMode mode)
{
    if (base < 2) {
        throw Error(Errc::InvalidBase, "base must be >= 2, got " + std::to_string(base));
    }
    const std::int64_t k = raster.neuron_count();
    if (mode == DecodeMode::FixedSchedule && raster.slot_count() < k) {
        throw Error(Errc::SchemeMismatch,
                    "fixed schedule needs at least one slot per neuron");
    }

    Value acc = 0;
    if (mode == DecodeMode::FixedSchedule) {
        for (std::int64_t i = 0; i < k; ++i) {
            if (!raster.slots(i).empty()) {
                acc += pow_value(Value(base), static_cast<unsigned>(k - 1 - i));
            }
        }
        return acc;
    }

    const auto order = rank_order(raster);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        if (!raster.slots(order[rank]).empty()) {
            acc += pow_value(Value(base),
                             static_cast<unsigned>(k - 1 - static_cast<std::int64_t>(rank)));
        }
    }
    return acc;
}

std::string temporal_lossy_class(const Value& v, std::int64_t base, std::int64_t k)
{
    const auto digits = digits_for(v, base, k);
    std::string pattern;
    pattern.reserve(digits.size());
    for (std::int64_t d : digits) {
        pattern.push_back(d != 0 ? '1' : '0');
    }
    return pattern;
}

SpikeRaster temporal_rate_encode(const Value& v, const TemporalRateParams& params)
{
    check_temporal_rate_params(params);
    const auto digits = digits_for(v, params.n, params.k);
    SpikeRasterBuilder builder(params.k, params.timeline());
    for (std::int64_t i = 0; i < params.k; ++i) {
        const std::int64_t count = digits[static_cast<std::size_t>(i)];
        const std::int64_t window_end = (i + 1) * params.n;
        for (std::int64_t slot = window_end - count; slot < window_end; ++slot) {
            builder.add(i, slot);
        }
    }
    return builder.build();
}

Value temporal_rate_decode(const SpikeRaster& raster, const TemporalRateParams& params,
                           DecodeMode mode, CountPolicy policy)
{
    check_temporal_rate_params(params);
    if (raster.neuron_count() != params.k) {
        throw Error(Errc::SchemeMismatch,
                    "raster has " + std::to_string(raster.neuron_count()) +
                        " neurons, params say k = " + std::to_string(params.k));
    }
    if (mode == DecodeMode::FixedSchedule && raster.slot_count() != params.timeline()) {
        throw Error(Errc::SchemeMismatch,
                    "raster has " + std::to_string(raster.slot_count()) +
                        " slots, params say " + std::to_string(params.timeline()));
    }

    std::vector<std::int64_t> counts = spike_counts(raster);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] >= params.n) {
            if (policy == CountPolicy::Strict) {
                throw Error(Errc::CountOverflow,
                            "neuron " + std::to_string(i) + " fired " +
                                std::to_string(counts[i]) + " times, digit max is " +
                                std::to_string(params.n - 1));
            }
            counts[i] = params.n - 1;
        }
    }

    Value acc = 0;
    if (mode == DecodeMode::FixedSchedule) {
        for (std::int64_t i = 0; i < params.k; ++i) {
            acc += Value(counts[static_cast<std::size_t>(i)]) *
                   pow_value(Value(params.n), static_cast<unsigned>(params.k - 1 - i));
        }
        return acc;
    }

    const auto order = rank_order(raster);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        acc += Value(counts[static_cast<std::size_t>(order[rank])]) *
               pow_value(Value(params.n),
                         static_cast<unsigned>(params.k - 1 - static_cast<std::int64_t>(rank)));
    }
    return acc;
}

ComparisonOutcome compare_encoded(const SpikeRaster& a, const SpikeRaster& b,
                                  std::int64_t base, Scheme scheme)
{
    if (scheme != Scheme::Temporal && scheme != Scheme::TemporalRate) {
        throw Error(Errc::UnknownScheme,
                    std::string("compare supports temporal schemes, got ") +
                        scheme_tag(scheme));
    }
    if (base < 2) {
        throw Error(Errc::InvalidBase, "base must be >= 2, got " + std::to_string(base));
    }
    if (a.neuron_count() != b.neuron_count() || a.slot_count() != b.slot_count()) {
        throw Error(Errc::SchemeMismatch, "rasters have different shapes");
    }
    if (a == b) {
        return ComparisonOutcome::Equal;
    }

    if (scheme == Scheme::TemporalRate) {
        const std::int64_t k = a.neuron_count();
        if (k == 0 || a.slot_count() % k != 0) {
            throw Error(Errc::SchemeMismatch, "timeline does not split into k windows");
        }
        const TemporalRateParams params{a.slot_count() / k, k};
        const Value va = temporal_rate_decode(a, params);
        const Value vb = temporal_rate_decode(b, params);
        if (va < vb) return ComparisonOutcome::Less;
        if (va > vb) return ComparisonOutcome::Greater;
        return ComparisonOutcome::Equal;
    }

    // Temporal: only the highest-weight (lowest-index) spiking neuron is
    // trustworthy across representations.
    const std::int64_t k = a.neuron_count();
    auto highest = [k](const SpikeRaster& r) {
        for (std::int64_t i = 0; i < k; ++i) {
            if (!r.slots(i).empty()) {
                return i;
            }
        }
        return k;  // silent bundle encodes zero
    };
    const std::int64_t ha = highest(a);
    const std::int64_t hb = highest(b);
    if (ha != hb) {
        return ha < hb ? ComparisonOutcome::Greater : ComparisonOutcome::Less;
    }
    if (base == 2) {
        const Value va = temporal_positional_decode(a, base);
        const Value vb = temporal_positional_decode(b, base);
        if (va < vb) return ComparisonOutcome::Less;
        if (va > vb) return ComparisonOutcome::Greater;
        return ComparisonOutcome::Equal;
    }
    return ComparisonOutcome::Ambiguous;
}

}  // namespace spikenum
