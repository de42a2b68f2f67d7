#pragma once

#include <stdexcept>
#include <string>

namespace spikenum {

// Error kinds raised by the codec and lab operations. The CLI maps these
// to exit code 2 (validation) vs 1 (I/O).
enum class Errc {
    DigitOutOfRange,
    InvalidBase,
    InvalidWidth,
    LengthMismatch,
    Overflow,
    CapacityExceeded,
    WrongBundleSize,
    CountOverflow,
    UnknownScheme,
    MalformedInput,
    OutOfBounds,
    InvalidEvent,
    InvalidParams,
    SchemeMismatch,
    IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code)
    {
    }

    Errc code() const { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc code)
{
    switch (code) {
    case Errc::DigitOutOfRange: return "DigitOutOfRange";
    case Errc::InvalidBase: return "InvalidBase";
    case Errc::InvalidWidth: return "InvalidWidth";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::Overflow: return "Overflow";
    case Errc::CapacityExceeded: return "CapacityExceeded";
    case Errc::WrongBundleSize: return "WrongBundleSize";
    case Errc::CountOverflow: return "CountOverflow";
    case Errc::UnknownScheme: return "UnknownScheme";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::InvalidEvent: return "InvalidEvent";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace spikenum
