#include "aocr/evaluation.hpp"

#include <cstdio>

#include "aocr/error.hpp"
#include "aocr/pipeline.hpp"

namespace aocr {

EvalReport make_report(const ConfusionMatrix& confusion, std::size_t errors) {
    EvalReport r;
    r.confusion = confusion;
    r.errors = errors;
    std::array<std::size_t, kClassCount> predicted{};
    std::array<std::size_t, kClassCount> actual{};
    for (std::size_t t = 0; t < kClassCount; ++t) {
        for (std::size_t p = 0; p < kClassCount; ++p) {
            r.total += confusion[t][p];
            actual[t] += confusion[t][p];
            predicted[p] += confusion[t][p];
        }
        r.correct += confusion[t][t];
    }
    r.accuracy = r.total == 0 ? 0.0 : static_cast<double>(r.correct) / static_cast<double>(r.total);
    for (std::size_t k = 0; k < kClassCount; ++k) {
        const auto hit = static_cast<double>(confusion[k][k]);
        r.per_class[k].precision = predicted[k] == 0 ? 0.0 : hit / static_cast<double>(predicted[k]);
        r.per_class[k].recall = actual[k] == 0 ? 0.0 : hit / static_cast<double>(actual[k]);
    }
    return r;
}

EvalReport evaluate(const Mlp& m, std::span<const ManifestEntry> entries, double secondary_ratio) {
    if (entries.empty()) throw Error(ErrorCode::EmptySplit, "no images to evaluate");

    ConfusionMatrix confusion{};
    std::size_t errors = 0;
    for (const auto& entry : entries) {
        try {
            const auto features = image_features(load_netpbm_file(entry.path.string()), secondary_ratio);
            ++confusion[entry.label][predict(m, features).label];
        } catch (const Error&) {
            ++errors;
        }
    }
    return make_report(confusion, errors);
}

RenderedReport render_report(const EvalReport& r, const std::array<std::string, kClassCount>& labels) {
    RenderedReport out;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", r.accuracy);
    out.summary = "accuracy " + std::string(buf) + " (" + std::to_string(r.correct) + "/" +
                  std::to_string(r.total) + ")";

    for (std::size_t k = 0; k < kClassCount; ++k) {
        std::snprintf(buf, sizeof(buf), " precision %.4f recall %.4f\n", r.per_class[k].precision,
                      r.per_class[k].recall);
        out.per_class += labels[k] + buf;
    }

    out.confusion_csv = "truth\\pred";
    for (const auto& label : labels) out.confusion_csv += "," + label;
    out.confusion_csv += "\n";
    for (std::size_t t = 0; t < kClassCount; ++t) {
        out.confusion_csv += labels[t];
        for (std::size_t p = 0; p < kClassCount; ++p) out.confusion_csv += "," + std::to_string(r.confusion[t][p]);
        out.confusion_csv += "\n";
    }
    return out;
}

}  // namespace aocr
