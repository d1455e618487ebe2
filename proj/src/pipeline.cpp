#include "aocr/pipeline.hpp"

#include "aocr/error.hpp"

namespace aocr {

BinaryImage clean_binary(const GrayImage& img) {
    return denoise(binarize(img, otsu_threshold(img)));
}

std::vector<Glyph> segment_glyphs(const BinaryImage& mask, double secondary_ratio) {
    return sort_reading_order(group_diacritics(connected_components(mask), secondary_ratio));
}

const Glyph& largest_glyph(const std::vector<Glyph>& glyphs) {
    if (glyphs.empty()) throw Error(ErrorCode::Empty, "image contains no glyph");
    const Glyph* best = &glyphs.front();
    for (const auto& g : glyphs) {
        if (g.area() > best->area()) best = &g;
    }
    return *best;
}

FeatureVector image_features(const GrayImage& img, double secondary_ratio) {
    const auto glyphs = segment_glyphs(clean_binary(img), secondary_ratio);
    return extract_features(crop_normalize(largest_glyph(glyphs)));
}

std::vector<NormalizedGlyph> page_glyphs(const GrayImage& img, double secondary_ratio) {
    std::vector<NormalizedGlyph> out;
    for (const auto& g : segment_glyphs(clean_binary(img), secondary_ratio)) out.push_back(crop_normalize(g));
    return out;
}

}  // namespace aocr
