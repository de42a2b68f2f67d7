#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "spikenum/error.hpp"

namespace spikenum {

// Exact arbitrary-precision quantities. Every count, weight and impact in
// this library is an integer or a ratio of integers; nothing is ever
// rounded through floating point.
using Value = boost::multiprecision::cpp_int;
using Ratio = boost::multiprecision::cpp_rational;

inline Value pow_value(const Value& base, unsigned exponent)
{
    return boost::multiprecision::pow(base, exponent);
}

inline bool is_power_of_two(std::int64_t n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

// log2 of a power of two.
inline int log2_exact(std::int64_t n)
{
    int bits = 0;
    while ((std::int64_t{1} << bits) < n) {
        ++bits;
    }
    return bits;
}

// Parses a nonnegative decimal integer. MalformedInput on anything else.
inline Value parse_value(std::string_view text)
{
    if (text.empty()) {
        throw Error(Errc::MalformedInput, "empty value");
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw Error(Errc::MalformedInput,
                        "invalid decimal value '" + std::string(text) + "'");
        }
    }
    return Value(std::string(text));
}

inline std::string value_to_string(const Value& v)
{
    return v.str();
}

// Exact "numerator/denominator" form, always reduced, denominator >= 1.
inline std::string ratio_to_string(const Ratio& r)
{
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

}  // namespace spikenum
