#pragma once

#include <vector>

#include "aocr/features.hpp"
#include "aocr/imaging.hpp"
#include "aocr/segmentation.hpp"

namespace aocr {

/// Otsu threshold, binarize, then one denoise pass.
BinaryImage clean_binary(const GrayImage& img);

/// Components grouped with their diacritics, in right-to-left reading order.
std::vector<Glyph> segment_glyphs(const BinaryImage& mask, double secondary_ratio = kDefaultSecondaryRatio);

/// Largest-area glyph; the earliest in the given order wins ties.
/// Throws Error(Empty) when the list is empty.
const Glyph& largest_glyph(const std::vector<Glyph>& glyphs);

/// Full single-character path: clean, segment, keep the largest glyph,
/// normalize, extract.
FeatureVector image_features(const GrayImage& img, double secondary_ratio = kDefaultSecondaryRatio);

/// Every glyph on a page in reading order, normalized.
std::vector<NormalizedGlyph> page_glyphs(const GrayImage& img, double secondary_ratio = kDefaultSecondaryRatio);

}  // namespace aocr
