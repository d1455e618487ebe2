#include "aocr/dataset.hpp"

#include <cmath>
#include <fstream>
#include <system_error>

#include "aocr/error.hpp"
#include "aocr/imaging.hpp"
#include "aocr/rng.hpp"

namespace aocr {

namespace fs = std::filesystem;

std::string_view split_name(Split s) { return s == Split::Train ? "train" : "test"; }

std::vector<ManifestEntry> load_manifest(std::string_view csv, const fs::path& base_dir) {
    std::vector<ManifestEntry> entries;
    std::size_t row = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos < csv.size()) {
        const auto end = csv.find('\n', pos);
        std::string_view line = csv.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? csv.size() : end + 1;
        ++row;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (!saw_header) {
            if (line != "path,label,split") {
                throw Error(ErrorCode::Header, "expected header 'path,label,split', found '" + std::string(line) + "'");
            }
            saw_header = true;
            continue;
        }
        if (line.empty()) continue;

        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
            throw Error(ErrorCode::Format, "row " + std::to_string(row) + ": expected 3 fields");
        }
        const auto path = line.substr(0, c1);
        const auto label = line.substr(c1 + 1, c2 - c1 - 1);
        const auto split = line.substr(c2 + 1);

        const auto index = class_index(label);
        if (!index) {
            throw Error(ErrorCode::Label, "row " + std::to_string(row) + ": unknown label '" + std::string(label) + "'");
        }
        ManifestEntry entry;
        entry.label = *index;
        if (split == "train") {
            entry.split = Split::Train;
        } else if (split == "test") {
            entry.split = Split::Test;
        } else {
            throw Error(ErrorCode::Split, "row " + std::to_string(row) + ": unknown split '" + std::string(split) + "'");
        }
        entry.path = base_dir / fs::path(std::string(path));
        std::error_code ec;
        if (path.empty() || !fs::is_regular_file(entry.path, ec)) {
            throw Error(ErrorCode::MissingFile, "row " + std::to_string(row) + ": " + entry.path.string());
        }
        entries.push_back(std::move(entry));
    }
    if (!saw_header) throw Error(ErrorCode::Header, "manifest is empty");
    return entries;
}

std::vector<ManifestEntry> load_manifest_file(const fs::path& csv_path, const fs::path& base_dir) {
    const auto bytes = read_file(csv_path.string());
    return load_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), base_dir);
}

std::vector<ManifestEntry> filter_split(const std::vector<ManifestEntry>& entries, Split split) {
    std::vector<ManifestEntry> out;
    for (const auto& e : entries) {
        if (e.split == split) out.push_back(e);
    }
    return out;
}

BinaryImage procedural_template(std::size_t class_index) {
    Rng rng(0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(class_index));
    BinaryImage raw(kTemplateSize, kTemplateSize);
    for (int r = 0; r < kTemplateSize; ++r) {
        for (int c = 0; c < kTemplateSize; ++c) raw.set(r, c, rng.next_unit() < 0.45);
    }

    BinaryImage smooth(kTemplateSize, kTemplateSize);
    for (int r = 0; r < kTemplateSize; ++r) {
        for (int c = 0; c < kTemplateSize; ++c) {
            int votes = 0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) votes += raw.at_or_bg(r + dr, c + dc) ? 1 : 0;
            }
            smooth.set(r, c, votes >= 5);
        }
    }
    if (smooth.foreground_count() == 0) {
        for (int r = 7; r <= 8; ++r) {
            for (int c = 7; c <= 8; ++c) smooth.set(r, c, true);
        }
    }
    return smooth;
}

namespace {

BinaryImage load_template(const fs::path& dir, std::string_view label) {
    const fs::path file = dir / (std::string(label) + ".pgm");
    std::error_code ec;
    if (!fs::is_regular_file(file, ec)) {
        throw Error(ErrorCode::TemplateMissing, "no template for '" + std::string(label) + "' at " + file.string());
    }
    const auto gray = load_netpbm_file(file.string());
    if (gray.width() > kTemplateSize || gray.height() > kTemplateSize) {
        throw Error(ErrorCode::Format, file.string() + ": template larger than 16x16");
    }
    BinaryImage mask = binarize(gray, otsu_threshold(gray));
    if (mask.foreground_count() == 0) throw Error(ErrorCode::Empty, file.string() + ": template has no ink");
    return mask;
}

void check_config(const SynthConfig& cfg) {
    if (cfg.per_class < 1) throw Error(ErrorCode::Format, "per_class must be >= 1");
    if (!(cfg.noise_p >= 0.0 && cfg.noise_p <= 0.5)) throw Error(ErrorCode::Format, "noise must be in [0, 0.5]");
    if (cfg.max_shift < 0 || cfg.max_shift > 4) throw Error(ErrorCode::Format, "shift must be in [0, 4]");
    if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
        throw Error(ErrorCode::Format, "train fraction must be in (0, 1)");
    }
}

}  // namespace

std::vector<ManifestEntry> generate_dataset(const SynthConfig& cfg, const fs::path& out_dir) {
    check_config(cfg);

    std::vector<BinaryImage> templates;
    for (std::size_t k = 0; k < kClassCount; ++k) {
        templates.push_back(cfg.templates_dir ? load_template(*cfg.templates_dir, kClassLabels[k])
                                              : procedural_template(k));
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + out_dir.string() + ": " + ec.message());

    const auto train_count =
        static_cast<int>(std::floor(static_cast<double>(cfg.per_class) * cfg.train_fraction));
    const auto span = static_cast<std::uint64_t>(2 * cfg.max_shift + 1);

    Rng rng(cfg.seed);
    std::vector<ManifestEntry> entries;
    std::string manifest = "path,label,split\n";
    for (std::size_t k = 0; k < kClassCount; ++k) {
        const BinaryImage& tmpl = templates[k];
        for (int idx = 0; idx < cfg.per_class; ++idx) {
            // Draws are always consumed, even for zero shift or noise, so the
            // stream layout does not depend on the settings.
            const int dx = static_cast<int>(rng.next() % span) - cfg.max_shift;
            const int dy = static_cast<int>(rng.next() % span) - cfg.max_shift;

            BinaryImage canvas(kSampleSize, kSampleSize);
            for (int r = 0; r < tmpl.height(); ++r) {
                for (int c = 0; c < tmpl.width(); ++c) {
                    if (tmpl.at(r, c)) canvas.set(kTemplateOrigin + dy + r, kTemplateOrigin + dx + c, true);
                }
            }
            for (int r = 0; r < kSampleSize; ++r) {
                for (int c = 0; c < kSampleSize; ++c) {
                    if (rng.next_unit() < cfg.noise_p) canvas.set(r, c, !canvas.at(r, c));
                }
            }

            const std::string name = std::string(kClassLabels[k]) + "_" + std::to_string(idx) + ".pgm";
            save_pgm_file(to_gray(canvas), (out_dir / name).string());

            ManifestEntry entry{out_dir / name, k, idx < train_count ? Split::Train : Split::Test};
            manifest += name + "," + std::string(kClassLabels[k]) + "," + std::string(split_name(entry.split)) + "\n";
            entries.push_back(std::move(entry));
        }
    }
    write_file((out_dir / "manifest.csv").string(),
               std::span(reinterpret_cast<const std::uint8_t*>(manifest.data()), manifest.size()));
    return entries;
}

}  // namespace aocr
