#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spikenum/scheme.hpp"
#include "spikenum/value.hpp"

namespace spikenum {

// Position-dependent numeral: digit i (counted from the right) weighs
// base^i. Digits are stored most-significant first, as printed.
struct PositionalNumeral {
    std::int64_t base = 2;
    std::vector<std::int64_t> digits;  // MSB first

    bool operator==(const PositionalNumeral&) const = default;

    std::size_t width() const { return digits.size(); }
};

// Position-independent numeral: the value is the number of '1' digits.
// Stored as a count; the digit string is materialized only on demand.
struct UnaryStream {
    Value ones_count = 0;

    bool operator==(const UnaryStream&) const = default;
};

inline constexpr std::uint64_t kDefaultMaterializeCap = std::uint64_t{1} << 20;

// Hybrid of k fixed-length unary streams. streams[0] is the leftmost and
// highest-weight stream (weight n^(k-1)); the stream printed last weighs
// n^0. Each stream holds exactly n binary digits and its value is its
// popcount.
struct UnaryPositionalWord {
    std::int64_t n = 2;                     // stream length; power of two
    std::vector<std::vector<bool>> streams;  // [0] = highest weight

    bool operator==(const UnaryPositionalWord&) const = default;

    std::int64_t k() const { return static_cast<std::int64_t>(streams.size()); }
};

// --- positional ---

Value positional_decode(const PositionalNumeral& numeral);

PositionalNumeral positional_encode(const Value& v, std::int64_t base,
                                    std::optional<std::size_t> min_width = std::nullopt);

// --- unary ---

UnaryStream unary_encode(const Value& v);

Value unary_decode(const UnaryStream& s);

// Digit string of the stream ('1' repeated ones_count times).
// CapacityExceeded when the stream is longer than max_digits.
std::string unary_materialize(const UnaryStream& s,
                              std::uint64_t max_digits = kDefaultMaterializeCap);

// Number of unary digits needed to cover every digit_count-digit value in
// the given base, i.e. base^digit_count. Computed, never materialized.
Value unary_length_for(std::int64_t base, std::int64_t digit_count);

// --- unary-positional ---

// Converts a binary numeral into a unary-positional word with stream
// length n (power of two, m = log2 n bits of binary per stream). The bits
// are left-padded with zeros to a multiple of m, so k = padded_width / m.
// Within a stream the layout matches the printed form: one reserved zero
// digit first, then one block per binary bit in descending significance,
// the bit of significance 2^j expanded to a block of 2^j copies.
UnaryPositionalWord binary_to_unary_positional(const PositionalNumeral& bits,
                                               std::int64_t n);

// Weighted popcount sum. Accepts any 0/1 pattern, canonical or not.
Value unary_positional_decode(const UnaryPositionalWord& word);

// Rewrites the word into the canonical expanding-group layout, preserving
// its value. Overflow when some stream has popcount n (no canonical form
// keeps the reserved digit zero).
UnaryPositionalWord canonicalize(const UnaryPositionalWord& word);

// Worst-case effect of a single faulty symbol, by scheme:
//   unary / rate-unary          1
//   positional                  2^(log2(n)*k - 1)   (most significant bit)
//   unary-positional            n^(k-1)
//   temporal / temporal-rate    n^(k-1)             (highest-weight neuron)
// n must be a power of two >= 2, k >= 1.
Value max_error_impact(Scheme scheme, std::int64_t n, std::int64_t k);

// --- text formats ---

// "digits_base": MSB-first digit characters plus a decimal base suffix,
// e.g. "101100011_2". Digits use 0-9a-z, so text forms stop at base 36.
std::string format_positional(const PositionalNumeral& numeral);
PositionalNumeral parse_positional(std::string_view text);

// Space-separated n-character streams with an "_u<n>" suffix, e.g.
// "01111001 01111000 00000111_u8".
std::string format_unary_positional(const UnaryPositionalWord& word);
UnaryPositionalWord parse_unary_positional(std::string_view text);

// Materialized ones with an "_u" suffix, e.g. "1111111111111_u".
std::string format_unary(const UnaryStream& s,
                         std::uint64_t max_digits = kDefaultMaterializeCap);
UnaryStream parse_unary(std::string_view text);

}  // namespace spikenum
