#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "aocr/classes.hpp"
#include "aocr/dataset.hpp"
#include "aocr/network.hpp"

namespace aocr {

using ConfusionMatrix = std::array<std::array<std::size_t, kClassCount>, kClassCount>;

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
};

/// confusion[truth][prediction]. total counts scored images only; images the
/// pipeline could not process are tallied in errors.
struct EvalReport {
    std::size_t total = 0;
    std::size_t correct = 0;
    std::size_t errors = 0;
    double accuracy = 0.0;
    ConfusionMatrix confusion{};
    std::array<ClassMetrics, kClassCount> per_class{};
};

/// Derives totals, accuracy and per-class metrics (0/0 taken as 0).
EvalReport make_report(const ConfusionMatrix& confusion, std::size_t errors = 0);

/// Runs every image through the pipeline and scores its largest glyph.
/// Throws Error(EmptySplit) when entries is empty.
EvalReport evaluate(const Mlp& m, std::span<const ManifestEntry> entries,
                    double secondary_ratio = kDefaultSecondaryRatio);

struct RenderedReport {
    std::string summary;        // "accuracy 0.9821 (550/560)"
    std::string per_class;      // "<label> precision P recall R" per line
    std::string confusion_csv;  // 29x29 cells, labels on the first row and column
};

RenderedReport render_report(const EvalReport& r, const std::array<std::string, kClassCount>& labels =
                                                       Mlp::default_classes());

}  // namespace aocr
