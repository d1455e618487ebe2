#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "aocr/segmentation.hpp"

namespace aocr {

inline constexpr std::size_t kFeatureCount = 58;

// Layout of the feature vector.
inline constexpr std::size_t kZoneOffset = 0;         // 4x4 zone densities
inline constexpr std::size_t kRowProjOffset = 16;     // 16 row projections
inline constexpr std::size_t kColProjOffset = 32;     // 16 column projections
inline constexpr std::size_t kAspectIndex = 48;
inline constexpr std::size_t kDensityIndex = 49;
inline constexpr std::size_t kCentroidColIndex = 50;
inline constexpr std::size_t kCentroidRowIndex = 51;
inline constexpr std::size_t kRowCrossOffset = 52;    // rows 3, 7, 11
inline constexpr std::size_t kColCrossOffset = 55;    // cols 3, 7, 11

using FeatureVector = std::array<double, kFeatureCount>;

/// Which feature dimensions survive selection. Always keeps at least one.
class FeatureMask {
public:
    /// Throws Error(Degenerate) when nothing is kept.
    explicit FeatureMask(const std::array<bool, kFeatureCount>& keep);

    static FeatureMask all();
    /// Keeps indices [0, n); n must be in 1..58.
    static FeatureMask prefix(std::size_t n);

    bool keeps(std::size_t i) const { return keep_[i]; }
    std::size_t kept_count() const noexcept { return kept_count_; }
    const std::array<bool, kFeatureCount>& keep() const noexcept { return keep_; }

    friend bool operator==(const FeatureMask&, const FeatureMask&) = default;

private:
    std::array<bool, kFeatureCount> keep_{};
    std::size_t kept_count_ = 0;
};

/// Throws Error(Empty) on an all-background grid.
FeatureVector extract_features(const NormalizedGlyph& g);

inline constexpr double kVarianceEpsilon = 1e-12;

/// Keeps every dimension whose population variance exceeds 1e-12.
/// Throws Error(Degenerate) if none does, Error(EmptyDataset) on an empty list.
FeatureMask fit_feature_mask(std::span<const FeatureVector> vectors);

/// Kept entries in ascending index order.
std::vector<double> apply_mask(const FeatureVector& v, const FeatureMask& m);

}  // namespace aocr
