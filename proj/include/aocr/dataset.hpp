#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aocr/classes.hpp"
#include "aocr/segmentation.hpp"

namespace aocr {

enum class Split { Train, Test };

std::string_view split_name(Split s);

struct ManifestEntry {
    std::filesystem::path path;  // resolved against the manifest's base directory
    std::size_t label = 0;       // index into kClassLabels
    Split split = Split::Train;
};

/// Parses "path,label,split" CSV. Row numbers in errors count the header as row 1.
/// Throws Error(Header), Error(Label), Error(Split), Error(Format) or Error(MissingFile).
std::vector<ManifestEntry> load_manifest(std::string_view csv, const std::filesystem::path& base_dir);
std::vector<ManifestEntry> load_manifest_file(const std::filesystem::path& csv_path,
                                              const std::filesystem::path& base_dir);

std::vector<ManifestEntry> filter_split(const std::vector<ManifestEntry>& entries, Split split);

inline constexpr int kTemplateSize = 16;
inline constexpr int kSampleSize = 24;
inline constexpr int kTemplateOrigin = 4;

/// Procedural 16x16 pseudo-glyph for class k: seeded random fill, one
/// majority-smoothing pass, never empty.
BinaryImage procedural_template(std::size_t class_index);

struct SynthConfig {
    int per_class = 100;
    double noise_p = 0.02;
    int max_shift = 2;
    double train_fraction = 0.8;
    std::uint64_t seed = 1;
    /// Directory of <label>.pgm templates; procedural templates when empty.
    std::optional<std::filesystem::path> templates_dir;
};

/// Writes <label>_<idx>.pgm files plus manifest.csv into out_dir and returns
/// the manifest rows in write order.
std::vector<ManifestEntry> generate_dataset(const SynthConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace aocr
