#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "spikenum/numeral.hpp"
#include "spikenum/rng.hpp"

using namespace spikenum;

namespace {

UnaryPositionalWord make_word(std::int64_t n, const std::vector<std::string>& streams)
{
    UnaryPositionalWord word;
    word.n = n;
    for (const auto& text : streams) {
        std::vector<bool> stream;
        for (char c : text) {
            stream.push_back(c == '1');
        }
        word.streams.push_back(std::move(stream));
    }
    return word;
}

std::vector<std::string> stream_strings(const UnaryPositionalWord& word)
{
    std::vector<std::string> out;
    for (const auto& stream : word.streams) {
        std::string text;
        for (bool bit : stream) {
            text.push_back(bit ? '1' : '0');
        }
        out.push_back(std::move(text));
    }
    return out;
}

template <typename F>
Errc error_code_of(F&& f)
{
    try {
        f();
    }
    catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::IoError;
}

}  // namespace

TEST_CASE("positional decode")
{
    CHECK(positional_decode({2, {1, 1, 0, 1}}) == 13);
    CHECK(positional_decode({10, {0}}) == 0);
    CHECK(positional_decode({8, {5, 4, 3}}) == 355);
    CHECK(positional_decode({16, {15, 15}}) == 255);

    CHECK(error_code_of([] { positional_decode({8, {5, 8, 3}}); }) ==
          Errc::DigitOutOfRange);
    CHECK(error_code_of([] { positional_decode({8, {5, -1, 3}}); }) ==
          Errc::DigitOutOfRange);
    CHECK(error_code_of([] { positional_decode({1, {0}}); }) == Errc::InvalidBase);
}

TEST_CASE("positional encode")
{
    CHECK(positional_encode(355, 2, 9).digits ==
          std::vector<std::int64_t>{1, 0, 1, 1, 0, 0, 0, 1, 1});
    CHECK(positional_encode(0, 2).digits == std::vector<std::int64_t>{0});
    CHECK(positional_encode(73, 8).digits == std::vector<std::int64_t>{1, 1, 1});
    // min_width only pads; it never truncates.
    CHECK(positional_encode(355, 2, 4).width() == 9);
    CHECK(positional_encode(3, 2, 5).digits == std::vector<std::int64_t>{0, 0, 0, 1, 1});

    CHECK(error_code_of([] { positional_encode(5, 1); }) == Errc::InvalidBase);
    CHECK(error_code_of([] { positional_encode(Value(-3), 2); }) == Errc::InvalidParams);
}

TEST_CASE("positional roundtrip over sampled 64-bit values")
{
    SplitMix64 rng(0x706f73697469ULL);
    for (std::int64_t base : {2, 8, 10, 16}) {
        for (int i = 0; i < 2500; ++i) {
            const Value v = rng.next();
            CHECK(positional_decode(positional_encode(v, base)) == v);
        }
    }
}

TEST_CASE("unary encode and decode")
{
    CHECK(unary_decode(unary_encode(13)) == 13);
    CHECK(unary_encode(13).ones_count == 13);
    CHECK(unary_encode(0).ones_count == 0);
    CHECK(unary_encode(9876).ones_count == 9876);

    const std::string digits = unary_materialize(unary_encode(13));
    CHECK(digits.size() == 13);
    CHECK(digits.find_first_not_of('1') == std::string::npos);
    CHECK(unary_materialize(unary_encode(0)).empty());

    // Lengths stay computable far beyond anything materializable.
    CHECK(error_code_of([] { unary_materialize(unary_encode(Value(1) << 21)); }) ==
          Errc::CapacityExceeded);

    SplitMix64 rng(0x756e617279ULL);
    for (int i = 0; i < 1000; ++i) {
        const Value v = rng.next_below(1 << 20);
        CHECK(unary_decode(unary_encode(v)) == v);
    }
}

TEST_CASE("unary length growth")
{
    CHECK(unary_length_for(2, 4) == 16);
    CHECK(unary_length_for(10, 4) == 10000);
    CHECK(unary_length_for(3, 1) == 3);
    CHECK(unary_length_for(10, 20) == Value("100000000000000000000"));

    CHECK(error_code_of([] { unary_length_for(1, 4); }) == Errc::InvalidBase);
    CHECK(error_code_of([] { unary_length_for(2, 0); }) == Errc::InvalidWidth);
}

TEST_CASE("binary to unary-positional conversion matches the printed form")
{
    const auto word = binary_to_unary_positional(positional_encode(355, 2, 9), 8);
    CHECK(word.n == 8);
    CHECK(word.k() == 3);
    CHECK(stream_strings(word) ==
          std::vector<std::string>{"01111001", "01111000", "00000111"});
    CHECK(unary_positional_decode(word) == 355);

    // Reserved digit stays zero in every stream.
    for (const auto& stream : word.streams) {
        CHECK_FALSE(stream.front());
    }
}

TEST_CASE("conversion pads short inputs and handles zero")
{
    const auto zero = binary_to_unary_positional(positional_encode(0, 2), 2);
    CHECK(zero.k() == 1);
    CHECK(stream_strings(zero) == std::vector<std::string>{"00"});
    CHECK(unary_positional_decode(zero) == 0);

    // 7 bits in base 8 pad to 9, so k stays 3.
    const auto padded = binary_to_unary_positional(positional_encode(100, 2), 8);
    CHECK(padded.k() == 3);
    CHECK(unary_positional_decode(padded) == 100);

    CHECK(error_code_of([] { binary_to_unary_positional(positional_encode(3, 2), 3); }) ==
          Errc::InvalidBase);
    CHECK(error_code_of([] { binary_to_unary_positional(positional_encode(3, 2), 1); }) ==
          Errc::InvalidBase);
    CHECK(error_code_of(
              [] { binary_to_unary_positional(positional_encode(7, 8), 8); }) ==
          Errc::InvalidBase);
}

TEST_CASE("conversion roundtrips exhaustively for 9-bit values at n = 8")
{
    for (std::int64_t v = 0; v < 512; ++v) {
        const auto bits = positional_encode(v, 2, 9);
        const auto word = binary_to_unary_positional(bits, 8);
        CHECK(unary_positional_decode(word) == positional_decode(bits));
    }
}

TEST_CASE("unary-positional roundtrip across bases and widths")
{
    for (std::int64_t n : {2, 4, 8, 16}) {
        const int m = log2_exact(n);
        for (std::int64_t k = 1; k <= 3; ++k) {
            const Value space = pow_value(Value(n), static_cast<unsigned>(k));
            for (Value v = 0; v < space; ++v) {
                const auto word = binary_to_unary_positional(
                    positional_encode(v, 2, static_cast<std::size_t>(k * m)), n);
                CHECK(word.k() == k);
                CHECK(unary_positional_decode(word) == v);
            }
        }
    }
}

TEST_CASE("decode ignores bit placement within a stream")
{
    SplitMix64 rng(0x7065726dULL);
    for (int trial = 0; trial < 200; ++trial) {
        const Value v = rng.next_below(512);
        auto word = binary_to_unary_positional(positional_encode(v, 2, 9), 8);
        for (auto& stream : word.streams) {
            // Fisher-Yates with the portable generator.
            for (std::size_t i = stream.size(); i > 1; --i) {
                const std::size_t j = rng.next_below(i);
                const bool tmp = stream[i - 1];
                stream[i - 1] = stream[j];
                stream[j] = tmp;
            }
        }
        CHECK(unary_positional_decode(word) == v);
    }

    CHECK(error_code_of([] {
              unary_positional_decode(make_word(8, {"0111", "01111000"}));
          }) == Errc::LengthMismatch);
}

TEST_CASE("canonicalize")
{
    // Oracle: the convert(encode(decode)) path the canonical form is defined by.
    const auto scattered = make_word(8, {"10101010"});
    const auto expected =
        binary_to_unary_positional(positional_encode(4, 2, 3), 8);
    CHECK(canonicalize(scattered) == expected);
    CHECK(stream_strings(canonicalize(scattered)) ==
          std::vector<std::string>{"01111000"});

    const auto canonical = binary_to_unary_positional(positional_encode(355, 2, 9), 8);
    CHECK(canonicalize(canonical) == canonical);

    CHECK(error_code_of([] { canonicalize(make_word(8, {"11111111"})); }) ==
          Errc::Overflow);
}

TEST_CASE("single-digit-flip impact is exactly the stream weight")
{
    const std::int64_t n = 8;
    const std::int64_t k = 3;
    const Value bound = max_error_impact(Scheme::UnaryPositional, n, k);
    for (std::int64_t v = 0; v < 512; ++v) {
        const auto word =
            binary_to_unary_positional(positional_encode(v, 2, 9), n);
        for (std::int64_t display = 0; display < k; ++display) {
            const unsigned weight_index = static_cast<unsigned>(k - 1 - display);
            for (std::int64_t bit = 0; bit < n; ++bit) {
                auto flipped = word;
                auto& stream = flipped.streams[static_cast<std::size_t>(display)];
                stream[static_cast<std::size_t>(bit)] =
                    !stream[static_cast<std::size_t>(bit)];
                Value delta = unary_positional_decode(flipped) - v;
                if (delta < 0) {
                    delta = -delta;
                }
                CHECK(delta == pow_value(Value(n), weight_index));
                CHECK(delta <= bound);
            }
        }
    }
}

TEST_CASE("max error impact per scheme")
{
    CHECK(max_error_impact(Scheme::UnaryPositional, 8, 3) == 64);
    CHECK(max_error_impact(Scheme::Positional, 8, 3) == 256);
    CHECK(max_error_impact(Scheme::Unary, 8, 3) == 1);
    CHECK(max_error_impact(Scheme::RateUnary, 2, 1) == 1);
    CHECK(max_error_impact(Scheme::Temporal, 8, 3) == 64);
    CHECK(max_error_impact(Scheme::TemporalRate, 8, 3) == 64);

    CHECK(error_code_of([] { max_error_impact(Scheme::UnaryPositional, 6, 3); }) ==
          Errc::InvalidBase);
    CHECK(error_code_of([] { max_error_impact(Scheme::UnaryPositional, 8, 0); }) ==
          Errc::InvalidWidth);
}

TEST_CASE("positional text form")
{
    CHECK(format_positional({2, {1, 0, 1, 1, 0, 0, 0, 1, 1}}) == "101100011_2");
    CHECK(format_positional({16, {10, 3}}) == "a3_16");
    CHECK(parse_positional("101100011_2") == PositionalNumeral{2, {1, 0, 1, 1, 0, 0, 0, 1, 1}});
    CHECK(parse_positional("A3_16") == PositionalNumeral{16, {10, 3}});
    CHECK(parse_positional("000_2").width() == 3);  // leading zeros survive

    CHECK(error_code_of([] { parse_positional("355"); }) == Errc::MalformedInput);
    CHECK(error_code_of([] { parse_positional("12_"); }) == Errc::MalformedInput);
    CHECK(error_code_of([] { parse_positional("19_8"); }) == Errc::DigitOutOfRange);
    CHECK(error_code_of([] { parse_positional("11_1"); }) == Errc::InvalidBase);

    SplitMix64 rng(0x74657874ULL);
    for (int i = 0; i < 500; ++i) {
        const Value v = rng.next();
        const auto numeral = positional_encode(v, 16);
        CHECK(parse_positional(format_positional(numeral)) == numeral);
    }
}

TEST_CASE("unary-positional text form")
{
    const auto word = binary_to_unary_positional(positional_encode(355, 2, 9), 8);
    CHECK(format_unary_positional(word) == "01111001 01111000 00000111_u8");
    CHECK(parse_unary_positional("01111001 01111000 00000111_u8") == word);

    CHECK(error_code_of([] { parse_unary_positional("0111 01111000_u8"); }) ==
          Errc::LengthMismatch);
    CHECK(error_code_of([] { parse_unary_positional("01111001_u3"); }) ==
          Errc::InvalidBase);
    CHECK(error_code_of([] { parse_unary_positional("01121001_u8"); }) ==
          Errc::MalformedInput);
    CHECK(error_code_of([] { parse_unary_positional("_u8"); }) == Errc::MalformedInput);
}

TEST_CASE("unary text form")
{
    CHECK(format_unary(unary_encode(13)) == "1111111111111_u");
    CHECK(format_unary(unary_encode(0)) == "_u");
    CHECK(parse_unary("1111111111111_u").ones_count == 13);
    CHECK(parse_unary("_u").ones_count == 0);

    CHECK(error_code_of([] { parse_unary("111"); }) == Errc::MalformedInput);
    CHECK(error_code_of([] { parse_unary("101_u"); }) == Errc::MalformedInput);
}
