#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aocr {

enum class ErrorCode {
    Format,
    Empty,
    Degenerate,
    Dim,
    EmptyDataset,
    Magic,
    Truncated,
    DimMismatch,
    Header,
    Label,
    Split,
    MissingFile,
    TemplateMissing,
    Io,
    EmptySplit,
};

/// Stable identifier such as "E_FORMAT", used as the prefix of every message.
std::string_view error_name(ErrorCode code);

/// Raised by every fallible operation in the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace aocr
