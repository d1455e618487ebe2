#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aocr {

/// 8-bit grayscale raster, row-major.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t at(int row, int col) const { return data_[index(row, col)]; }
    void set(int row, int col, std::uint8_t value) { data_[index(row, col)] = value; }

    std::span<const std::uint8_t> pixels() const noexcept { return data_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Two-valued mask; 1 marks ink (foreground).
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height, bool fill = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    bool at(int row, int col) const { return data_[index(row, col)] != 0; }
    void set(int row, int col, bool value) { data_[index(row, col)] = value ? 1 : 0; }

    /// Out-of-range coordinates read as background.
    bool at_or_bg(int row, int col) const {
        return row >= 0 && col >= 0 && row < height_ && col < width_ && at(row, col);
    }

    std::size_t foreground_count() const noexcept;
    std::span<const std::uint8_t> bits() const noexcept { return data_; }

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Parses P2/P3/P5/P6 with maxval <= 255. Pixmaps are collapsed with rgb_to_gray.
/// Throws Error(Format) with the byte offset of the problem.
GrayImage load_netpbm(std::span<const std::uint8_t> bytes);
GrayImage load_netpbm_file(const std::string& path);

/// Emits "P5\n<w> <h>\n255\n" followed by the raw raster.
std::vector<std::uint8_t> save_pgm(const GrayImage& img);
void save_pgm_file(const GrayImage& img, const std::string& path);

/// Luma with weights 0.299/0.587/0.114, rounded half up.
std::uint8_t rgb_to_gray(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Global Otsu level. Class 0 holds pixels <= t; ties resolve to the smallest t.
int otsu_threshold(const GrayImage& img);

/// Foreground iff intensity <= t.
BinaryImage binarize(const GrayImage& img, int t);

/// Single pass: clears foreground pixels with no foreground 8-neighbor.
BinaryImage denoise(const BinaryImage& img);

/// Renders a mask with ink = 0 and background = 255.
GrayImage to_gray(const BinaryImage& mask);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace aocr
