#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "aocr/imaging.hpp"

namespace aocr {

/// Inclusive pixel rectangle.
struct BBox {
    int row0 = 0;
    int col0 = 0;
    int row1 = 0;
    int col1 = 0;

    int width() const noexcept { return col1 - col0 + 1; }
    int height() const noexcept { return row1 - row0 + 1; }

    friend bool operator==(const BBox&, const BBox&) = default;
};

BBox bbox_union(const BBox& a, const BBox& b);

struct Pixel {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

/// An 8-connected foreground region. Pixels are kept in raster order.
struct Component {
    std::vector<Pixel> pixels;
    BBox bbox;

    std::size_t area() const noexcept { return pixels.size(); }
};

/// A letter body plus any diacritic marks attached to it. members[0] is the body.
struct Glyph {
    std::vector<Component> members;
    BBox bbox;

    std::size_t area() const noexcept;
};

inline constexpr int kGridSize = 16;

struct NormalizedGlyph {
    std::array<std::array<std::uint8_t, kGridSize>, kGridSize> grid{};
    int src_width = 0;
    int src_height = 0;

    bool at(int row, int col) const { return grid[row][col] != 0; }
    int foreground_count() const noexcept;
};

inline constexpr double kDefaultSecondaryRatio = 0.25;

/// Two-pass union-find labeling with 8-connectivity. Components are ordered
/// by the raster position of their first pixel.
std::vector<Component> connected_components(const BinaryImage& img);

/// Components smaller than ratio * (largest area) are diacritics; each joins
/// the body with the greatest horizontal bbox overlap, then the nearest
/// horizontal center, then the lowest index. Without any body every component
/// stands alone.
std::vector<Glyph> group_diacritics(const std::vector<Component>& components,
                                    double secondary_ratio = kDefaultSecondaryRatio);

/// Right-to-left: descending col1, then ascending row0, stable otherwise.
std::vector<Glyph> sort_reading_order(std::vector<Glyph> glyphs);

/// Nearest-neighbour resample of the glyph's own pixels onto a 16x16 grid.
/// Throws Error(Empty) when the glyph has no pixels.
NormalizedGlyph crop_normalize(const Glyph& g);

}  // namespace aocr
