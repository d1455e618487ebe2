#pragma once

#include <iosfwd>

namespace aocr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPipeline = 3;

/// Entry point for the aocr executable. Results go to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aocr
