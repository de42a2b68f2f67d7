#include "spikenum/numeral.hpp"

#include <algorithm>
#include <charconv>

namespace spikenum {

namespace {

void check_base(std::int64_t base)
{
    if (base < 2) {
        throw Error(Errc::InvalidBase, "base must be >= 2, got " + std::to_string(base));
    }
}

void check_unary_base(std::int64_t n)
{
    if (n < 2 || !is_power_of_two(n)) {
        throw Error(Errc::InvalidBase,
                    "unary-positional base must be a power of two >= 2, got " +
                        std::to_string(n));
    }
}

void check_nonnegative(const Value& v)
{
    if (v < 0) {
        throw Error(Errc::InvalidParams, "value must be nonnegative, got " + v.str());
    }
}

std::int64_t popcount(const std::vector<bool>& stream)
{
    return static_cast<std::int64_t>(std::count(stream.begin(), stream.end(), true));
}

char digit_char(std::int64_t d)
{
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

std::int64_t digit_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return 10 + (c - 'a');
    if (c >= 'A' && c <= 'Z') return 10 + (c - 'A');
    return -1;
}

}  // namespace

Value positional_decode(const PositionalNumeral& numeral)
{
    check_base(numeral.base);
    Value acc = 0;
    for (std::int64_t d : numeral.digits) {
        if (d < 0 || d >= numeral.base) {
            throw Error(Errc::DigitOutOfRange,
                        "digit " + std::to_string(d) + " not in [0, " +
                            std::to_string(numeral.base) + ")");
        }
        acc = acc * numeral.base + d;
    }
    return acc;
}

PositionalNumeral positional_encode(const Value& v, std::int64_t base,
                                    std::optional<std::size_t> min_width)
{
    check_base(base);
    check_nonnegative(v);
    std::vector<std::int64_t> digits;
    Value rest = v;
    while (rest > 0) {
        digits.push_back(static_cast<std::int64_t>(rest % base));
        rest /= base;
    }
    if (digits.empty()) {
        digits.push_back(0);  // canonical zero is a single digit
    }
    while (min_width && digits.size() < *min_width) {
        digits.push_back(0);
    }
    std::reverse(digits.begin(), digits.end());
    return PositionalNumeral{base, std::move(digits)};
}

UnaryStream unary_encode(const Value& v)
{
    check_nonnegative(v);
    return UnaryStream{v};
}

Value unary_decode(const UnaryStream& s)
{
    return s.ones_count;
}

std::string unary_materialize(const UnaryStream& s, std::uint64_t max_digits)
{
    if (s.ones_count > max_digits) {
        throw Error(Errc::CapacityExceeded,
                    "unary stream of " + s.ones_count.str() +
                        " digits exceeds materialization cap " +
                        std::to_string(max_digits));
    }
    return std::string(static_cast<std::size_t>(s.ones_count), '1');
}

Value unary_length_for(std::int64_t base, std::int64_t digit_count)
{
    check_base(base);
    if (digit_count < 1) {
        throw Error(Errc::InvalidWidth,
                    "digit count must be >= 1, got " + std::to_string(digit_count));
    }
    return pow_value(Value(base), static_cast<unsigned>(digit_count));
}

UnaryPositionalWord binary_to_unary_positional(const PositionalNumeral& bits,
                                               std::int64_t n)
{
    check_unary_base(n);
    if (bits.base != 2) {
        throw Error(Errc::InvalidBase,
                    "conversion input must be binary, got base " +
                        std::to_string(bits.base));
    }
    for (std::int64_t d : bits.digits) {
        if (d != 0 && d != 1) {
            throw Error(Errc::DigitOutOfRange, "binary digit " + std::to_string(d));
        }
    }

    const int m = log2_exact(n);
    const std::size_t padded =
        ((bits.digits.size() + m - 1) / m) * static_cast<std::size_t>(m);
    std::vector<std::int64_t> padded_bits(padded - bits.digits.size(), 0);
    padded_bits.insert(padded_bits.end(), bits.digits.begin(), bits.digits.end());

    UnaryPositionalWord word;
    word.n = n;
    for (std::size_t group = 0; group < padded / m; ++group) {
        std::vector<bool> stream;
        stream.reserve(static_cast<std::size_t>(n));
        stream.push_back(false);  // reserved digit
        for (int j = m - 1; j >= 0; --j) {
            const bool bit = padded_bits[group * m + (m - 1 - j)] != 0;
            stream.insert(stream.end(), std::size_t{1} << j, bit);
        }
        word.streams.push_back(std::move(stream));
    }
    return word;
}

Value unary_positional_decode(const UnaryPositionalWord& word)
{
    check_unary_base(word.n);
    Value acc = 0;
    for (const auto& stream : word.streams) {
        if (static_cast<std::int64_t>(stream.size()) != word.n) {
            throw Error(Errc::LengthMismatch,
                        "stream length " + std::to_string(stream.size()) +
                            " != n = " + std::to_string(word.n));
        }
        acc = acc * word.n + popcount(stream);
    }
    return acc;
}

UnaryPositionalWord canonicalize(const UnaryPositionalWord& word)
{
    check_unary_base(word.n);
    for (std::size_t i = 0; i < word.streams.size(); ++i) {
        if (popcount(word.streams[i]) == word.n) {
            throw Error(Errc::Overflow,
                        "stream " + std::to_string(i) +
                            " has popcount n; no canonical form keeps the "
                            "reserved digit zero");
        }
    }
    const Value v = unary_positional_decode(word);
    const std::size_t bit_width =
        static_cast<std::size_t>(word.k()) * static_cast<std::size_t>(log2_exact(word.n));
    return binary_to_unary_positional(positional_encode(v, 2, bit_width), word.n);
}

Value max_error_impact(Scheme scheme, std::int64_t n, std::int64_t k)
{
    check_unary_base(n);
    if (k < 1) {
        throw Error(Errc::InvalidWidth, "k must be >= 1, got " + std::to_string(k));
    }
    switch (scheme) {
    case Scheme::Unary:
    case Scheme::RateUnary:
        return 1;
    case Scheme::Positional:
        return pow_value(2, static_cast<unsigned>(log2_exact(n) * k - 1));
    case Scheme::UnaryPositional:
    case Scheme::Temporal:
    case Scheme::TemporalRate:
        return pow_value(Value(n), static_cast<unsigned>(k - 1));
    }
    throw Error(Errc::UnknownScheme, "unhandled scheme");
}

std::string format_positional(const PositionalNumeral& numeral)
{
    check_base(numeral.base);
    if (numeral.base > 36) {
        throw Error(Errc::InvalidBase,
                    "text form supports bases up to 36, got " +
                        std::to_string(numeral.base));
    }
    std::string out;
    for (std::int64_t d : numeral.digits) {
        if (d < 0 || d >= numeral.base) {
            throw Error(Errc::DigitOutOfRange, "digit " + std::to_string(d));
        }
        out.push_back(digit_char(d));
    }
    if (out.empty()) {
        out.push_back('0');
    }
    return out + "_" + std::to_string(numeral.base);
}

PositionalNumeral parse_positional(std::string_view text)
{
    const auto sep = text.rfind('_');
    if (sep == std::string_view::npos || sep == 0 || sep + 1 == text.size()) {
        throw Error(Errc::MalformedInput,
                    "expected \"digits_base\", got '" + std::string(text) + "'");
    }
    const std::string_view base_part = text.substr(sep + 1);
    std::int64_t base = 0;
    const auto [ptr, ec] =
        std::from_chars(base_part.data(), base_part.data() + base_part.size(), base);
    if (ec != std::errc{} || ptr != base_part.data() + base_part.size()) {
        throw Error(Errc::MalformedInput,
                    "bad base suffix '" + std::string(base_part) + "'");
    }
    check_base(base);
    if (base > 36) {
        throw Error(Errc::InvalidBase,
                    "text form supports bases up to 36, got " + std::to_string(base));
    }
    PositionalNumeral numeral{base, {}};
    for (char c : text.substr(0, sep)) {
        const std::int64_t d = digit_value(c);
        if (d < 0) {
            throw Error(Errc::MalformedInput, std::string("bad digit '") + c + "'");
        }
        if (d >= base) {
            throw Error(Errc::DigitOutOfRange,
                        std::string("digit '") + c + "' not valid in base " +
                            std::to_string(base));
        }
        numeral.digits.push_back(d);
    }
    return numeral;
}

std::string format_unary_positional(const UnaryPositionalWord& word)
{
    check_unary_base(word.n);
    std::string out;
    for (std::size_t i = 0; i < word.streams.size(); ++i) {
        if (static_cast<std::int64_t>(word.streams[i].size()) != word.n) {
            throw Error(Errc::LengthMismatch, "stream " + std::to_string(i));
        }
        if (i > 0) {
            out.push_back(' ');
        }
        for (bool bit : word.streams[i]) {
            out.push_back(bit ? '1' : '0');
        }
    }
    return out + "_u" + std::to_string(word.n);
}

UnaryPositionalWord parse_unary_positional(std::string_view text)
{
    const auto suffix = text.rfind("_u");
    if (suffix == std::string_view::npos || suffix + 2 == text.size()) {
        throw Error(Errc::MalformedInput,
                    "expected \"streams_u<n>\", got '" + std::string(text) + "'");
    }
    const std::string_view n_part = text.substr(suffix + 2);
    std::int64_t n = 0;
    const auto [ptr, ec] = std::from_chars(n_part.data(), n_part.data() + n_part.size(), n);
    if (ec != std::errc{} || ptr != n_part.data() + n_part.size()) {
        throw Error(Errc::MalformedInput, "bad base suffix '" + std::string(n_part) + "'");
    }
    check_unary_base(n);

    UnaryPositionalWord word;
    word.n = n;
    std::vector<bool> stream;
    for (char c : text.substr(0, suffix)) {
        if (c == ' ') {
            if (!stream.empty()) {
                word.streams.push_back(std::move(stream));
                stream.clear();
            }
            continue;
        }
        if (c != '0' && c != '1') {
            throw Error(Errc::MalformedInput, std::string("bad stream digit '") + c + "'");
        }
        stream.push_back(c == '1');
    }
    if (!stream.empty()) {
        word.streams.push_back(std::move(stream));
    }
    if (word.streams.empty()) {
        throw Error(Errc::MalformedInput, "word has no streams");
    }
    for (const auto& s : word.streams) {
        if (static_cast<std::int64_t>(s.size()) != n) {
            throw Error(Errc::LengthMismatch,
                        "stream length " + std::to_string(s.size()) +
                            " != n = " + std::to_string(n));
        }
    }
    return word;
}

std::string format_unary(const UnaryStream& s, std::uint64_t max_digits)
{
    return unary_materialize(s, max_digits) + "_u";
}

UnaryStream parse_unary(std::string_view text)
{
    if (text.size() < 2 || text.substr(text.size() - 2) != "_u") {
        throw Error(Errc::MalformedInput,
                    "expected \"1...1_u\", got '" + std::string(text) + "'");
    }
    const std::string_view ones = text.substr(0, text.size() - 2);
    for (char c : ones) {
        if (c != '1') {
            throw Error(Errc::MalformedInput, std::string("bad unary digit '") + c + "'");
        }
    }
    return UnaryStream{Value(ones.size())};
}

}  // namespace spikenum
