#include "aocr/segmentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "aocr/error.hpp"

namespace aocr {

BBox bbox_union(const BBox& a, const BBox& b) {
    return {std::min(a.row0, b.row0), std::min(a.col0, b.col0), std::max(a.row1, b.row1),
            std::max(a.col1, b.col1)};
}

std::size_t Glyph::area() const noexcept {
    std::size_t n = 0;
    for (const auto& m : members) n += m.area();
    return n;
}

int NormalizedGlyph::foreground_count() const noexcept {
    int n = 0;
    for (const auto& row : grid) n += static_cast<int>(std::count(row.begin(), row.end(), 1));
    return n;
}

namespace {

class DisjointSet {
public:
    int make() {
        parent_.push_back(static_cast<int>(parent_.size()));
        return parent_.back();
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // The smaller root survives, so a root is always the earliest-created label.
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<int> parent_;
};

}  // namespace

std::vector<Component> connected_components(const BinaryImage& img) {
    const int h = img.height();
    const int w = img.width();
    std::vector<int> labels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), -1);
    auto label_at = [&](int r, int c) -> int& { return labels[static_cast<std::size_t>(r) * w + c]; };

    DisjointSet sets;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!img.at(r, c)) continue;
            int assigned = -1;
            // Already-visited neighbours: W, NW, N, NE.
            constexpr int kOffsets[4][2] = {{0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};
            for (const auto& off : kOffsets) {
                const int rr = r + off[0];
                const int cc = c + off[1];
                if (rr < 0 || cc < 0 || cc >= w) continue;
                const int other = label_at(rr, cc);
                if (other < 0) continue;
                if (assigned < 0) {
                    assigned = other;
                } else {
                    sets.unite(assigned, other);
                }
            }
            label_at(r, c) = assigned < 0 ? sets.make() : assigned;
        }
    }

    // Roots are the minimum label in each set, and labels are created in raster
    // order, so numbering roots on first sight reproduces first-pixel order.
    std::vector<int> slot_of_root;
    std::vector<Component> out;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int label = label_at(r, c);
            if (label < 0) continue;
            const int root = sets.find(label);
            if (static_cast<std::size_t>(root) >= slot_of_root.size()) {
                slot_of_root.resize(static_cast<std::size_t>(root) + 1, -1);
            }
            int& slot = slot_of_root[root];
            if (slot < 0) {
                slot = static_cast<int>(out.size());
                out.push_back(Component{{}, BBox{r, c, r, c}});
            }
            auto& comp = out[slot];
            comp.pixels.push_back({r, c});
            comp.bbox = bbox_union(comp.bbox, BBox{r, c, r, c});
        }
    }
    return out;
}

std::vector<Glyph> group_diacritics(const std::vector<Component>& components,
                                    double secondary_ratio) {
    std::size_t max_area = 0;
    for (const auto& comp : components) max_area = std::max(max_area, comp.area());
    const double cutoff = secondary_ratio * static_cast<double>(max_area);
    auto is_secondary = [&](const Component& comp) {
        return static_cast<double>(comp.area()) < cutoff;
    };

    std::vector<Glyph> glyphs;
    std::vector<std::size_t> primary_index;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (is_secondary(components[i])) continue;
        glyphs.push_back(Glyph{{components[i]}, components[i].bbox});
        primary_index.push_back(i);
    }

    if (glyphs.empty()) {
        for (const auto& comp : components) glyphs.push_back(Glyph{{comp}, comp.bbox});
        return glyphs;
    }

    for (const auto& comp : components) {
        if (!is_secondary(comp)) continue;
        std::size_t best = 0;
        int best_overlap = -1;
        int best_distance = 0;
        for (std::size_t g = 0; g < primary_index.size(); ++g) {
            const BBox& body = components[primary_index[g]].bbox;
            const int overlap =
                std::max(0, std::min(body.col1, comp.bbox.col1) - std::max(body.col0, comp.bbox.col0) + 1);
            // Doubled centers keep the distance integral.
            const int distance =
                std::abs((body.col0 + body.col1) - (comp.bbox.col0 + comp.bbox.col1));
            if (overlap > best_overlap || (overlap == best_overlap && distance < best_distance)) {
                best = g;
                best_overlap = overlap;
                best_distance = distance;
            }
        }
        glyphs[best].members.push_back(comp);
        glyphs[best].bbox = bbox_union(glyphs[best].bbox, comp.bbox);
    }
    return glyphs;
}

std::vector<Glyph> sort_reading_order(std::vector<Glyph> glyphs) {
    std::stable_sort(glyphs.begin(), glyphs.end(), [](const Glyph& a, const Glyph& b) {
        if (a.bbox.col1 != b.bbox.col1) return a.bbox.col1 > b.bbox.col1;
        return a.bbox.row0 < b.bbox.row0;
    });
    return glyphs;
}

NormalizedGlyph crop_normalize(const Glyph& g) {
    if (g.area() == 0) throw Error(ErrorCode::Empty, "glyph has no foreground pixels");

    const int w = g.bbox.width();
    const int h = g.bbox.height();
    BinaryImage crop(w, h);
    for (const auto& member : g.members) {
        for (const auto& p : member.pixels) crop.set(p.row - g.bbox.row0, p.col - g.bbox.col0, true);
    }

    NormalizedGlyph out;
    out.src_width = w;
    out.src_height = h;
    for (int i = 0; i < kGridSize; ++i) {
        const int src_row = i * h / kGridSize;
        for (int j = 0; j < kGridSize; ++j) {
            const int src_col = j * w / kGridSize;
            out.grid[i][j] = crop.at(src_row, src_col) ? 1 : 0;
        }
    }

    // Sampling can miss every ink pixel of a thin stroke in a glyph larger than
    // the grid (e.g. an anti-diagonal on a 32x32 box). Fall back to forward
    // mapping so the grid is never blank.
    if (out.foreground_count() == 0) {
        for (const auto& member : g.members) {
            for (const auto& p : member.pixels) {
                out.grid[(p.row - g.bbox.row0) * kGridSize / h][(p.col - g.bbox.col0) * kGridSize / w] = 1;
            }
        }
    }
    return out;
}

}  // namespace aocr
