#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace aocr {

inline constexpr std::size_t kClassCount = 28;

/// Isolated-form letter names, index 0..27.
inline constexpr std::array<std::string_view, kClassCount> kClassLabels = {
    "alef", "baa",  "taa", "thaa",  "jeem", "hah", "khah", "dal", "thal", "reh",
    "zain", "seen", "sheen", "sad", "dad",  "tah", "zah",  "ain", "ghain", "feh",
    "qaf",  "kaf",  "lam", "meem",  "noon", "heh", "waw",  "yeh",
};

constexpr std::optional<std::size_t> class_index(std::string_view label) {
    for (std::size_t i = 0; i < kClassCount; ++i) {
        if (kClassLabels[i] == label) return i;
    }
    return std::nullopt;
}

}  // namespace aocr
