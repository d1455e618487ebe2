#include "aocr/features.hpp"

#include "aocr/error.hpp"

namespace aocr {

FeatureMask::FeatureMask(const std::array<bool, kFeatureCount>& keep) : keep_(keep) {
    for (const bool k : keep_) kept_count_ += k ? 1 : 0;
    if (kept_count_ == 0) throw Error(ErrorCode::Degenerate, "feature mask keeps no dimension");
}

FeatureMask FeatureMask::all() {
    std::array<bool, kFeatureCount> keep{};
    keep.fill(true);
    return FeatureMask(keep);
}

FeatureMask FeatureMask::prefix(std::size_t n) {
    if (n == 0 || n > kFeatureCount) {
        throw Error(ErrorCode::Dim, "prefix mask size " + std::to_string(n) + " outside 1..58");
    }
    std::array<bool, kFeatureCount> keep{};
    for (std::size_t i = 0; i < n; ++i) keep[i] = true;
    return FeatureMask(keep);
}

namespace {

// Background-to-foreground transitions, counting a leading foreground cell.
template <typename At>
int crossings(At at) {
    int runs = 0;
    for (int i = 0; i < kGridSize; ++i) {
        if (at(i) && (i == 0 || !at(i - 1))) ++runs;
    }
    return runs;
}

}  // namespace

FeatureVector extract_features(const NormalizedGlyph& g) {
    constexpr double kCells = kGridSize;
    FeatureVector f{};

    int total = 0;
    long row_sum = 0;
    long col_sum = 0;
    std::array<int, kGridSize> row_counts{};
    std::array<int, kGridSize> col_counts{};
    std::array<int, 16> zone_counts{};
    for (int r = 0; r < kGridSize; ++r) {
        for (int c = 0; c < kGridSize; ++c) {
            if (!g.at(r, c)) continue;
            ++total;
            row_sum += r;
            col_sum += c;
            ++row_counts[r];
            ++col_counts[c];
            ++zone_counts[(r / 4) * 4 + c / 4];
        }
    }
    if (total == 0) throw Error(ErrorCode::Empty, "normalized glyph has no foreground");

    for (int z = 0; z < 16; ++z) f[kZoneOffset + z] = zone_counts[z] / 16.0;
    for (int i = 0; i < kGridSize; ++i) {
        f[kRowProjOffset + i] = row_counts[i] / kCells;
        f[kColProjOffset + i] = col_counts[i] / kCells;
    }

    f[kAspectIndex] = static_cast<double>(g.src_width) / static_cast<double>(g.src_width + g.src_height);
    f[kDensityIndex] = total / 256.0;
    f[kCentroidColIndex] = (static_cast<double>(col_sum) / total) / 15.0;
    f[kCentroidRowIndex] = (static_cast<double>(row_sum) / total) / 15.0;

    constexpr int kScanLines[3] = {3, 7, 11};
    for (int k = 0; k < 3; ++k) {
        const int line = kScanLines[k];
        f[kRowCrossOffset + k] = crossings([&](int i) { return g.at(line, i); }) / 8.0;
        f[kColCrossOffset + k] = crossings([&](int i) { return g.at(i, line); }) / 8.0;
    }
    return f;
}

FeatureMask fit_feature_mask(std::span<const FeatureVector> vectors) {
    if (vectors.empty()) throw Error(ErrorCode::EmptyDataset, "no training vectors for feature selection");

    const double n = static_cast<double>(vectors.size());
    std::array<bool, kFeatureCount> keep{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        double mean = 0.0;
        for (const auto& v : vectors) mean += v[j];
        mean /= n;
        double var = 0.0;
        for (const auto& v : vectors) var += (v[j] - mean) * (v[j] - mean);
        keep[j] = var / n > kVarianceEpsilon;
    }

    std::size_t kept = 0;
    for (const bool k : keep) kept += k ? 1 : 0;
    if (kept == 0) {
        throw Error(ErrorCode::Degenerate, "every feature is constant across " +
                                               std::to_string(vectors.size()) + " training vectors");
    }
    return FeatureMask(keep);
}

std::vector<double> apply_mask(const FeatureVector& v, const FeatureMask& m) {
    std::vector<double> out;
    out.reserve(m.kept_count());
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (m.keeps(i)) out.push_back(v[i]);
    }
    return out;
}

}  // namespace aocr
