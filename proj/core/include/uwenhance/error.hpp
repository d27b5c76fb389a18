#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uwe {

enum class Errc {
  FileNotFound,
  UnsupportedFormat,
  CorruptData,
  IoError,
  ChannelMismatch,
  RangeError,
  OutOfBounds,
  DimensionMismatch,
  InvalidParameter,
  TooSmall,
  IncompleteRecords,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

// Every failure in the library is reported through this one exception type;
// callers branch on code() rather than on the message text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace uwe
