#include "aocr/imaging.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>

#include "aocr/error.hpp"

namespace aocr {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width),
      height_(height),
      data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 0 || height < 0 ||
        data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw Error(ErrorCode::Dim, "raster length does not match " + std::to_string(width) +
                                        "x" + std::to_string(height));
    }
}

BinaryImage::BinaryImage(int width, int height, bool fill)
    : width_(width),
      height_(height),
      data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0) {}

std::size_t BinaryImage::foreground_count() const noexcept {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

namespace {

class NetpbmReader {
public:
    explicit NetpbmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::Format, what + " at byte offset " + std::to_string(pos_));
    }

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    unsigned read_uint(const char* what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) fail(std::string("truncated while reading ") + what);
        if (!std::isdigit(bytes_[pos_])) fail(std::string("expected digits for ") + what);
        unsigned long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
            if (value > 0xFFFFFFUL) fail(std::string("value too large for ") + what);
            ++pos_;
        }
        return static_cast<unsigned>(value);
    }

    // Exactly one whitespace byte separates the header from a binary raster.
    void expect_single_space() {
        if (pos_ >= bytes_.size()) fail("truncated before raster");
        if (!std::isspace(bytes_[pos_])) fail("expected whitespace after maxval");
        ++pos_;
    }

    std::uint8_t read_byte() {
        if (pos_ >= bytes_.size()) fail("truncated raster");
        return bytes_[pos_++];
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::uint8_t rescale(unsigned v, unsigned maxval) {
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>((v * 255U + maxval / 2U) / maxval);
}

}  // namespace

GrayImage load_netpbm(std::span<const std::uint8_t> bytes) {
    NetpbmReader in(bytes);
    if (bytes.size() < 2 || bytes[0] != 'P') in.fail("bad magic");
    const char kind = static_cast<char>(bytes[1]);
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6') in.fail("unsupported magic");
    const bool ascii = kind == '2' || kind == '3';
    const bool color = kind == '3' || kind == '6';

    in.read_byte();
    in.read_byte();
    if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#') in.fail("bad magic");

    const unsigned width = in.read_uint("width");
    const unsigned height = in.read_uint("height");
    const unsigned maxval = in.read_uint("maxval");
    if (width == 0 || height == 0) in.fail("zero image dimension");
    if (maxval == 0 || maxval > 255) in.fail("maxval " + std::to_string(maxval) + " outside 1..255");
    if (!ascii) in.expect_single_space();

    const std::size_t count = static_cast<std::size_t>(width) * height;
    const std::size_t channels = color ? 3 : 1;
    if (!ascii && in.remaining() < count * channels) in.fail("truncated raster");

    std::vector<std::uint8_t> data(count);
    std::array<unsigned, 3> sample{};
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t c = 0; c < channels; ++c) {
            sample[c] = ascii ? in.read_uint("sample") : in.read_byte();
            if (sample[c] > maxval) in.fail("sample exceeds maxval");
        }
        data[i] = color ? rgb_to_gray(rescale(sample[0], maxval), rescale(sample[1], maxval),
                                      rescale(sample[2], maxval))
                        : rescale(sample[0], maxval);
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

GrayImage load_netpbm_file(const std::string& path) {
    const auto bytes = read_file(path);
    try {
        return load_netpbm(bytes);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + std::string(e.what()));
    }
}

std::vector<std::uint8_t> save_pgm(const GrayImage& img) {
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
}

void save_pgm_file(const GrayImage& img, const std::string& path) {
    write_file(path, save_pgm(img));
}

std::uint8_t rgb_to_gray(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    // Integer weights in thousandths; +500 is round-half-up of the exact value.
    const unsigned scaled = 299U * r + 587U * g + 114U * b + 500U;
    return static_cast<std::uint8_t>(std::min(scaled / 1000U, 255U));
}

int otsu_threshold(const GrayImage& img) {
    std::array<std::uint64_t, 256> hist{};
    for (const auto v : img.pixels()) ++hist[v];

    const auto total = static_cast<std::int64_t>(img.pixels().size());
    std::int64_t sum_all = 0;
    for (int v = 0; v < 256; ++v) sum_all += v * static_cast<std::int64_t>(hist[v]);

    // total^2 * sigma_b^2(t) = D^2 / (n0 * n1) with D = s0 * total - sum_all * n0.
    // Compared exactly as quotient + remainder so ties are genuine ties.
    using u128 = unsigned __int128;
    int best_t = 0;
    u128 best_quot = 0;
    u128 best_rem = 0;
    u128 best_den = 1;

    std::int64_t n0 = 0;
    std::int64_t s0 = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += static_cast<std::int64_t>(hist[t]);
        s0 += t * static_cast<std::int64_t>(hist[t]);
        const std::int64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;
        const __int128 d = static_cast<__int128>(s0) * total - static_cast<__int128>(sum_all) * n0;
        const u128 mag = static_cast<u128>(d < 0 ? -d : d);
        const u128 num = mag * mag;
        const u128 den = static_cast<u128>(n0) * static_cast<u128>(n1);
        const u128 quot = num / den;
        const u128 rem = num % den;
        bool better = false;
        if (quot != best_quot) {
            better = quot > best_quot;
        } else {
            better = rem * best_den > best_rem * den;
        }
        if (better) {
            best_t = t;
            best_quot = quot;
            best_rem = rem;
            best_den = den;
        }
    }
    return best_t;
}

BinaryImage binarize(const GrayImage& img, int t) {
    BinaryImage out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) out.set(r, c, img.at(r, c) <= t);
    }
    return out;
}

BinaryImage denoise(const BinaryImage& img) {
    BinaryImage out = img;
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            if (!img.at(r, c)) continue;
            bool has_neighbor = false;
            for (int dr = -1; dr <= 1 && !has_neighbor; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if ((dr != 0 || dc != 0) && img.at_or_bg(r + dr, c + dc)) {
                        has_neighbor = true;
                        break;
                    }
                }
            }
            if (!has_neighbor) out.set(r, c, false);
        }
    }
    return out;
}

GrayImage to_gray(const BinaryImage& mask) {
    GrayImage out(mask.width(), mask.height(), 255);
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c)) out.set(r, c, 0);
        }
    }
    return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace aocr
