#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aocr/error.hpp"
#include "aocr/features.hpp"
#include "aocr/pipeline.hpp"
#include "oracles.hpp"

using namespace aocr;

namespace {

NormalizedGlyph random_glyph(Rng& rng) {
    NormalizedGlyph g;
    const double density = 0.05 + 0.9 * rng.next_unit();
    for (int r = 0; r < kGridSize; ++r)
        for (int c = 0; c < kGridSize; ++c) g.grid[r][c] = rng.next_unit() < density ? 1 : 0;
    if (g.foreground_count() == 0) g.grid[0][0] = 1;
    g.src_width = 1 + static_cast<int>(rng.next() % 40);
    g.src_height = 1 + static_cast<int>(rng.next() % 40);
    return g;
}

}  // namespace

TEST_CASE("extract_features on a full grid") {
    NormalizedGlyph g;
    for (auto& row : g.grid) row.fill(1);
    g.src_width = 20;
    g.src_height = 20;
    const auto f = extract_features(g);
    for (std::size_t i = 0; i < 48; ++i) CHECK(f[i] == 1.0);
    CHECK(f[kAspectIndex] == 0.5);
    CHECK(f[kDensityIndex] == 1.0);
    CHECK(f[kCentroidColIndex] == 0.5);
    CHECK(f[kCentroidRowIndex] == 0.5);
    for (std::size_t i = 52; i < 58; ++i) CHECK(f[i] == 0.125);
}

TEST_CASE("extract_features on a vertical stroke") {
    NormalizedGlyph g;
    for (int r = 0; r < kGridSize; ++r) g.grid[r][7] = 1;
    g.src_width = 4;
    g.src_height = 16;
    const auto f = extract_features(g);
    for (int z = 0; z < 16; ++z) CHECK(f[z] == (z % 4 == 1 ? 0.25 : 0.0));
    for (int i = 0; i < 16; ++i) {
        CHECK(f[kRowProjOffset + i] == 1.0 / 16.0);
        CHECK(f[kColProjOffset + i] == (i == 7 ? 1.0 : 0.0));
    }
    CHECK(f[kAspectIndex] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(f[kDensityIndex] == 1.0 / 16.0);
    CHECK(f[kCentroidColIndex] == 7.0 / 15.0);
    CHECK(f[kCentroidRowIndex] == 0.5);
    for (int k = 0; k < 3; ++k) CHECK(f[kRowCrossOffset + k] == 0.125);
    CHECK(f[kColCrossOffset + 0] == 0.0);
    CHECK(f[kColCrossOffset + 1] == 0.125);
    CHECK(f[kColCrossOffset + 2] == 0.0);
}

TEST_CASE("extract_features counts runs on scan lines") {
    NormalizedGlyph g;
    g.src_width = g.src_height = 16;
    for (int c = 0; c < kGridSize; c += 2) g.grid[3][c] = 1;  // 8 runs, first at index 0
    const auto f = extract_features(g);
    CHECK(f[kRowCrossOffset] == 1.0);
    CHECK(f[kRowCrossOffset + 1] == 0.0);
}

TEST_CASE("extract_features rejects a blank grid") {
    NormalizedGlyph g;
    g.src_width = g.src_height = 3;
    CHECK_THROWS_AS(extract_features(g), Error);
}

TEST_CASE("extract_features stays in range and satisfies the counting law") {
    Rng rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = random_glyph(rng);
        const auto f = extract_features(g);
        for (const double v : f) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }

        // Three independent recounts of the ink.
        int by_cells = 0, by_rows = 0, by_cols = 0;
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c) by_cells += g.grid[r][c];
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c) by_rows += g.grid[r][c] ? 1 : 0;
        for (int c = 0; c < 16; ++c)
            for (int r = 0; r < 16; ++r) by_cols += g.grid[r][c] ? 1 : 0;
        REQUIRE(by_cells == by_rows);
        REQUIRE(by_rows == by_cols);

        double zones = 0, rows = 0, cols = 0;
        for (int i = 0; i < 16; ++i) {
            zones += f[kZoneOffset + i];
            rows += f[kRowProjOffset + i];
            cols += f[kColProjOffset + i];
        }
        CHECK(zones * 16 == by_cells);
        CHECK(rows * 16 == by_cells);
        CHECK(cols * 16 == by_cells);
        CHECK(f[kDensityIndex] * 256 == by_cells);
    }
}

TEST_CASE("features are translation invariant") {
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        // One solid blob with a dot above it.
        const int w = 4 + static_cast<int>(rng.next() % 12);
        const int h = 4 + static_cast<int>(rng.next() % 12);
        auto draw = [&](int row0, int col0) {
            BinaryImage page(64, 64);
            for (int r = 0; r < h; ++r)
                for (int c = 0; c < w; ++c) page.set(row0 + 3 + r, col0 + c, (r + c) % 5 != 0);
            page.set(row0, col0 + w / 2, true);
            page.set(row0, col0 + w / 2 + 1, true);
            return page;
        };
        const auto reference = image_features(to_gray(draw(0, 0)));
        for (int k = 0; k < 4; ++k) {
            const int row0 = static_cast<int>(rng.next() % (64 - h - 3));
            const int col0 = static_cast<int>(rng.next() % (64 - w));
            CHECK(image_features(to_gray(draw(row0, col0))) == reference);
        }
    }
}

TEST_CASE("fit_feature_mask") {
    FeatureVector a{}, b{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        a[i] = 0.1;
        b[i] = 0.9;
    }
    std::vector<FeatureVector> two{a, b};
    CHECK(fit_feature_mask(two).kept_count() == 58);

    b[48] = a[48];
    two = {a, b};
    const auto mask = fit_feature_mask(two);
    CHECK(mask.kept_count() == 57);
    CHECK_FALSE(mask.keeps(48));

    const std::vector<FeatureVector> one{a};
    try {
        fit_feature_mask(one);
        FAIL("expected E_DEGENERATE");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Degenerate);
    }

    CHECK_THROWS_AS(fit_feature_mask(std::span<const FeatureVector>{}), Error);
}

TEST_CASE("apply_mask keeps entries in ascending order") {
    FeatureVector v{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) v[i] = static_cast<double>(i) / 100.0;
    const auto all = apply_mask(v, FeatureMask::all());
    CHECK(std::equal(all.begin(), all.end(), v.begin(), v.end()));

    std::array<bool, kFeatureCount> keep{};
    keep[0] = keep[57] = true;
    const auto two = apply_mask(v, FeatureMask(keep));
    REQUIRE(two.size() == 2);
    CHECK(two[0] == v[0]);
    CHECK(two[1] == v[57]);

    CHECK_THROWS_AS(FeatureMask(std::array<bool, kFeatureCount>{}), Error);
}
