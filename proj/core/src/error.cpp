#include "uwenhance/error.hpp"

namespace uwe {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::CorruptData: return "CorruptData";
    case Errc::IoError: return "IoError";
    case Errc::ChannelMismatch: return "ChannelMismatch";
    case Errc::RangeError: return "RangeError";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::TooSmall: return "TooSmall";
    case Errc::IncompleteRecords: return "IncompleteRecords";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace uwe
