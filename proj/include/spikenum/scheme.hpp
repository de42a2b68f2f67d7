#pragma once

#include <string>
#include <string_view>

#include "spikenum/error.hpp"

namespace spikenum {

// The six encodings. The string tags are stable CLI/API identifiers.
enum class Scheme {
    Unary,
    Positional,
    UnaryPositional,
    RateUnary,
    Temporal,
    TemporalRate,
};

inline const char* scheme_tag(Scheme s)
{
    switch (s) {
    case Scheme::Unary: return "unary";
    case Scheme::Positional: return "positional";
    case Scheme::UnaryPositional: return "unary-positional";
    case Scheme::RateUnary: return "rate-unary";
    case Scheme::Temporal: return "temporal";
    case Scheme::TemporalRate: return "temporal-rate";
    }
    return "?";
}

inline Scheme parse_scheme(std::string_view tag)
{
    if (tag == "unary") return Scheme::Unary;
    if (tag == "positional") return Scheme::Positional;
    if (tag == "unary-positional") return Scheme::UnaryPositional;
    if (tag == "rate-unary") return Scheme::RateUnary;
    if (tag == "temporal") return Scheme::Temporal;
    if (tag == "temporal-rate") return Scheme::TemporalRate;
    throw Error(Errc::UnknownScheme, "unknown scheme '" + std::string(tag) + "'");
}

inline bool is_spike_scheme(Scheme s)
{
    return s == Scheme::RateUnary || s == Scheme::Temporal ||
           s == Scheme::TemporalRate;
}

// How a temporal raster is read back.
//   FixedSchedule   weight comes from the neuron's index in the bundle.
//   FirstSpikeOrder weight comes from the neuron's first-spike rank.
enum class DecodeMode {
    FixedSchedule,
    FirstSpikeOrder,
};

inline const char* decode_mode_tag(DecodeMode m)
{
    return m == DecodeMode::FixedSchedule ? "fixed" : "order";
}

inline DecodeMode parse_decode_mode(std::string_view tag)
{
    if (tag == "fixed") return DecodeMode::FixedSchedule;
    if (tag == "order") return DecodeMode::FirstSpikeOrder;
    throw Error(Errc::InvalidParams, "unknown decode mode '" + std::string(tag) + "'");
}

}  // namespace spikenum
