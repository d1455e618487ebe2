#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "aocr/error.hpp"
#include "aocr/imaging.hpp"
#include "oracles.hpp"

using namespace aocr;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

GrayImage gray_from(int w, int h, std::vector<std::uint8_t> values) { return GrayImage(w, h, std::move(values)); }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an aocr::Error");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("load_netpbm parses ASCII and binary graymaps") {
    const auto ascii = load_netpbm(bytes_of("P2 2 2 255 0 255 128 64"));
    CHECK(ascii == gray_from(2, 2, {0, 255, 128, 64}));

    auto raw = bytes_of("P5\n2 2\n255\n");
    raw.insert(raw.end(), {0x00, 0xFF, 0x80, 0x40});
    CHECK(load_netpbm(raw) == ascii);
}

TEST_CASE("load_netpbm skips header comments") {
    const auto img = load_netpbm(bytes_of("P2\n# made by hand\n2 1 # trailing\n255\n3 4\n"));
    CHECK(img == gray_from(2, 1, {3, 4}));
}

TEST_CASE("load_netpbm collapses pixmaps through luma") {
    const auto img = load_netpbm(bytes_of("P3 3 1 255 255 255 255 0 0 0 255 0 0"));
    CHECK(img == gray_from(3, 1, {255, 0, 76}));

    auto raw = bytes_of("P6 1 1 255\n");
    raw.insert(raw.end(), {255, 0, 0});
    CHECK(load_netpbm(raw).at(0, 0) == 76);
}

TEST_CASE("load_netpbm rescales small maxval") {
    CHECK(load_netpbm(bytes_of("P2 2 1 1 0 1")) == gray_from(2, 1, {0, 255}));
}

TEST_CASE("load_netpbm rejects malformed input with E_FORMAT") {
    CHECK(code_of([] { load_netpbm(bytes_of("P7 1 1 255 0")); }) == ErrorCode::Format);
    CHECK(code_of([] { load_netpbm(bytes_of("P2 1 1 256 0")); }) == ErrorCode::Format);
    CHECK(code_of([] { load_netpbm(bytes_of("P5\n2 2\n255\n\x01\x02")); }) == ErrorCode::Format);
    CHECK(code_of([] { load_netpbm(bytes_of("P2 2 2 255 1 2 3")); }) == ErrorCode::Format);
    CHECK(code_of([] { load_netpbm(bytes_of("")); }) == ErrorCode::Format);
    CHECK(code_of([] { load_netpbm(bytes_of("P2 2 1 100 0 101")); }) == ErrorCode::Format);

    try {
        load_netpbm(bytes_of("P5\n2 2\n255\n\x01\x02"));
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
    }
}

TEST_CASE("save_pgm writes a P5 header and raw raster") {
    const auto bytes = save_pgm(gray_from(1, 1, {7}));
    const auto expected = bytes_of(std::string("P5\n1 1\n255\n") + '\x07');
    CHECK(bytes == expected);

    const auto two = save_pgm(gray_from(2, 2, {1, 2, 3, 4}));
    CHECK(two.size() == std::string("P5\n2 2\n255\n").size() + 4);
}

TEST_CASE("save_pgm then load_netpbm is the identity") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int w = 1 + static_cast<int>(rng.next() % 20);
        const int h = 1 + static_cast<int>(rng.next() % 20);
        const auto img = oracle::random_gray(rng, w, h);
        CHECK(load_netpbm(save_pgm(img)) == img);
    }
}

TEST_CASE("rgb_to_gray") {
    CHECK(rgb_to_gray(255, 255, 255) == 255);
    CHECK(rgb_to_gray(0, 0, 0) == 0);
    CHECK(rgb_to_gray(255, 0, 0) == 76);
    CHECK(rgb_to_gray(0, 255, 0) == 150);  // 149.685
    CHECK(rgb_to_gray(0, 0, 255) == 29);   // 29.07
}

TEST_CASE("otsu_threshold examples") {
    CHECK(otsu_threshold(gray_from(4, 1, {0, 0, 255, 255})) == 0);
    CHECK(otsu_threshold(gray_from(6, 1, {10, 10, 10, 200, 200, 200})) == 10);
    CHECK(otsu_threshold(GrayImage(5, 5, 200)) == 0);
}

TEST_CASE("otsu_threshold matches the exhaustive rational search") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const int w = 1 + static_cast<int>(rng.next() % 9);
        const int h = 1 + static_cast<int>(rng.next() % 9);
        GrayImage img(w, h);
        // Few distinct levels so ties actually occur.
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) img.set(r, c, static_cast<std::uint8_t>(85 * (rng.next() % 4)));
        }
        CHECK(otsu_threshold(img) == oracle::otsu_exhaustive(img));
    }
}

TEST_CASE("binarize marks dark pixels as ink") {
    const auto white = GrayImage(3, 3, 255);
    CHECK(binarize(white, 0).foreground_count() == 0);
    CHECK(binarize(white, 255).foreground_count() == 9);

    const auto img = gray_from(6, 1, {10, 200, 10, 200, 10, 200});
    const auto mask = binarize(img, 10);
    for (int c = 0; c < 6; ++c) CHECK(mask.at(0, c) == (c % 2 == 0));
}

TEST_CASE("binarize output is binary with the same dimensions") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto img = oracle::random_gray(rng, 7, 5);
        const auto mask = binarize(img, static_cast<int>(rng.next() % 256));
        CHECK(mask.width() == 7);
        CHECK(mask.height() == 5);
        for (const auto b : mask.bits()) CHECK(b <= 1);
    }
}

TEST_CASE("denoise removes only isolated pixels") {
    BinaryImage lone(5, 5);
    lone.set(2, 2, true);
    CHECK(denoise(lone).foreground_count() == 0);

    BinaryImage block(5, 5);
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= 2; ++c) block.set(r, c, true);
    CHECK(denoise(block) == block);

    BinaryImage corner(3, 3);
    corner.set(0, 0, true);
    corner.set(2, 2, true);
    CHECK(denoise(corner).foreground_count() == 0);
}

TEST_CASE("denoise equals the per-pixel rule and never adds ink") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const auto input = oracle::random_mask(rng, 16, 16, 0.1 + 0.05 * (trial % 8));
        const auto output = denoise(input);
        for (int r = 0; r < 16; ++r) {
            for (int c = 0; c < 16; ++c) {
                int neighbours = 0;
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc)
                        if ((dr || dc) && input.at_or_bg(r + dr, c + dc)) ++neighbours;
                CHECK(output.at(r, c) == (input.at(r, c) && neighbours > 0));
                if (output.at(r, c)) CHECK(input.at(r, c));
            }
        }
    }
}
