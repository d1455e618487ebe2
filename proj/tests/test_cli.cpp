#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <regex>
#include <sstream>

#include "aocr/cli.hpp"
#include "aocr/dataset.hpp"
#include "aocr/pipeline.hpp"
#include "test_support.hpp"

using namespace aocr;
using testing::TempDir;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "aocr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

// Accuracy of the 5-per-class end-to-end run below, recorded from the first run.
const std::string kSmallRunSummary = "accuracy 0.6429 (18/28)";

}  // namespace

TEST_CASE("synth, train and evaluate end to end") {
    TempDir dir("cli_e2e");
    const auto data = (dir / "d").string();
    const auto model = (dir / "m.aocr").string();

    auto r = run({"synth", "--out", data, "--per-class", "5", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(dir / "d" / "manifest.csv"));

    r = run({"train", "--data", data, "--model", model});
    CHECK(r.code == 0);
    const auto epoch_lines = lines(r.out);
    CHECK(epoch_lines.size() == 30);
    const std::regex epoch_re(R"(epoch \d+ loss \d+\.\d{6})");
    for (const auto& line : epoch_lines) CHECK(std::regex_match(line, epoch_re));
    CHECK(r.err.empty());

    const auto confusion = (dir / "c.csv").string();
    r = run({"evaluate", "--model", model, "--data", data, "--confusion", confusion});
    CHECK(r.code == 0);
    CHECK(std::regex_match(lines(r.out).at(0), std::regex(R"(accuracy \d\.\d{4} \(\d+/28\))")));
    CHECK(lines(r.out).at(0) == kSmallRunSummary);
    CHECK(lines(r.out).size() == 29);
    CHECK(lines(r.out).at(1).rfind("alef precision ", 0) == 0);
    CHECK(lines(testing::slurp(confusion)).size() == 29);
}

TEST_CASE("train and synth are reproducible byte for byte") {
    TempDir dir("cli_det");
    const auto a = (dir / "a").string();
    const auto b = (dir / "b").string();
    REQUIRE(run({"synth", "--out", a, "--per-class", "3"}).code == 0);
    REQUIRE(run({"synth", "--out", b, "--per-class", "3"}).code == 0);
    CHECK(testing::snapshot(a) == testing::snapshot(b));

    const auto m1 = (dir / "m1.aocr").string();
    const auto m2 = (dir / "m2.aocr").string();
    REQUIRE(run({"train", "--data", a, "--model", m1, "--epochs", "3", "--hidden", "8"}).code == 0);
    REQUIRE(run({"train", "--data", a, "--model", m2, "--epochs", "3", "--hidden", "8"}).code == 0);
    CHECK(testing::slurp(m1) == testing::slurp(m2));
}

TEST_CASE("usage errors exit with 2") {
    auto r = run({"train"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--data") != std::string::npos);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(r.out.empty());

    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"features", "--image", "x.pgm", "--nope"}).code == 2);
    CHECK(run({"synth", "--out", "x", "--per-class", "many"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("input errors exit with 2 and name the path") {
    TempDir dir("cli_missing");
    const auto model = (dir / "m.aocr").string();
    testing::spit(model, "XXXX\n");

    auto r = run({"recognize", "--model", model, "--image", (dir / "missing.pgm").string()});
    CHECK(r.code == 2);  // bad magic is caught first
    CHECK(r.err.find("E_MAGIC") != std::string::npos);

    REQUIRE(run({"synth", "--out", (dir / "d").string(), "--per-class", "2"}).code == 0);
    REQUIRE(run({"train", "--data", (dir / "d").string(), "--model", model, "--epochs", "1"}).code == 0);
    r = run({"recognize", "--model", model, "--image", "missing.pgm"});
    CHECK(r.code == 2);
    CHECK(r.err.find("missing.pgm") != std::string::npos);

    r = run({"evaluate", "--model", model, "--data", (dir / "nowhere").string()});
    CHECK(r.code == 2);

    const auto bad = (dir / "bad.pgm").string();
    testing::spit(bad, "P7 1 1 255 0");
    CHECK(run({"features", "--image", bad}).code == 2);
}

TEST_CASE("pipeline errors exit with 3") {
    TempDir dir("cli_pipeline");
    const auto blank = (dir / "blank.pgm").string();
    save_pgm_file(GrayImage(10, 10, 255), blank);
    auto r = run({"features", "--image", blank});
    CHECK(r.code == 3);
    CHECK(r.err.find("E_EMPTY") != std::string::npos);
    CHECK(r.out.empty());

    // Identical images give a constant feature set.
    const auto data = dir / "d";
    std::filesystem::create_directories(data);
    save_pgm_file(to_gray(procedural_template(0)), (data / "a.pgm").string());
    testing::spit(data / "manifest.csv", "path,label,split\na.pgm,alef,train\na.pgm,baa,train\n");
    r = run({"train", "--data", data.string(), "--model", (dir / "m.aocr").string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("E_DEGENERATE") != std::string::npos);
}

TEST_CASE("features prints 58 values that parse back exactly") {
    TempDir dir("cli_features");
    const auto image = (dir / "g.pgm").string();
    const auto gray = to_gray(procedural_template(3));
    save_pgm_file(gray, image);
    const auto r = run({"features", "--image", image});
    REQUIRE(r.code == 0);
    const auto values = lines(r.out);
    REQUIRE(values.size() == 58);
    const auto expected = image_features(gray);
    for (std::size_t i = 0; i < 58; ++i) {
        double v = -1.0;
        std::from_chars(values[i].data(), values[i].data() + values[i].size(), v);
        CHECK(v == expected[i]);
    }
}

TEST_CASE("segment writes normalized glyphs in reading order") {
    TempDir dir("cli_segment");
    BinaryImage page(40, 12);
    for (int r = 2; r < 10; ++r) {
        for (int c = 2; c < 6; ++c) page.set(r, c, true);     // left, 4 wide
        for (int c = 20; c < 36; ++c) page.set(r, c, true);   // right, 16 wide
    }
    const auto image = (dir / "page.pgm").string();
    save_pgm_file(to_gray(page), image);
    const auto out_dir = dir / "glyphs";
    const auto r = run({"segment", "--image", image, "--out-dir", out_dir.string()});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).size() == 2);
    for (const auto* name : {"glyph_0.pgm", "glyph_1.pgm"}) {
        const auto g = load_netpbm_file((out_dir / name).string());
        CHECK(g.width() == 16);
        CHECK(g.height() == 16);
        for (const auto v : g.pixels()) CHECK(v == 0);  // solid blocks fill the grid
    }
    CHECK_FALSE(std::filesystem::exists(out_dir / "glyph_2.pgm"));
}

TEST_CASE("recognize prints index, label and confidence") {
    TempDir dir("cli_recognize");
    const auto data = (dir / "d").string();
    const auto model = (dir / "m.aocr").string();
    REQUIRE(run({"synth", "--out", data, "--per-class", "4", "--noise", "0", "--shift", "0"}).code == 0);
    REQUIRE(run({"train", "--data", data, "--model", model, "--epochs", "60", "--lr", "0.5"}).code == 0);

    const std::regex line_re(R"(\d+\t[a-z]+\t[01]\.\d{4})");
    auto r = run({"recognize", "--model", model, "--image", (dir / "d" / "kaf_3.pgm").string()});
    REQUIRE(r.code == 0);
    REQUIRE(lines(r.out).size() == 1);
    CHECK(std::regex_match(lines(r.out)[0], line_re));
    CHECK(lines(r.out)[0].rfind("0\tkaf\t", 0) == 0);

    r = run({"recognize", "--model", model, "--image", (dir / "d" / "alef_3.pgm").string(), "--page"});
    REQUIRE(r.code == 0);
    const auto page_lines = lines(r.out);
    CHECK(page_lines.size() >= 1);
    for (std::size_t i = 0; i < page_lines.size(); ++i) {
        CHECK(std::regex_match(page_lines[i], line_re));
        CHECK(page_lines[i].rfind(std::to_string(i) + "\t", 0) == 0);
    }
}
