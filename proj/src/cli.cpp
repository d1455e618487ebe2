#include "aocr/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <vector>

#include "aocr/dataset.hpp"
#include "aocr/error.hpp"
#include "aocr/evaluation.hpp"
#include "aocr/imaging.hpp"
#include "aocr/network.hpp"
#include "aocr/pipeline.hpp"

namespace aocr {

namespace fs = std::filesystem;

namespace {

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::Format:
        case ErrorCode::Magic:
        case ErrorCode::Truncated:
        case ErrorCode::DimMismatch:
        case ErrorCode::Header:
        case ErrorCode::Label:
        case ErrorCode::Split:
        case ErrorCode::MissingFile:
        case ErrorCode::TemplateMissing:
        case ErrorCode::Io:
            return true;
        default:
            return false;
    }
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Mlp read_model(const std::string& path) {
    const auto bytes = read_file(path);
    try {
        return load_model(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

struct SynthArgs {
    std::string out;
    SynthConfig cfg;
    std::string templates;
};

struct TrainArgs {
    std::string data;
    std::string manifest = "manifest.csv";
    std::string model;
    TrainConfig cfg;
    double dot_ratio = kDefaultSecondaryRatio;
};

struct RecognizeArgs {
    std::string model;
    std::string image;
    bool page = false;
    double dot_ratio = kDefaultSecondaryRatio;
};

struct EvaluateArgs {
    std::string model;
    std::string data;
    std::string manifest = "manifest.csv";
    std::string confusion;
    double dot_ratio = kDefaultSecondaryRatio;
};

struct SegmentArgs {
    std::string image;
    std::string out_dir;
    double dot_ratio = kDefaultSecondaryRatio;
};

struct FeaturesArgs {
    std::string image;
    double dot_ratio = kDefaultSecondaryRatio;
};

void run_synth(const SynthArgs& args, std::ostream& out) {
    SynthConfig cfg = args.cfg;
    if (!args.templates.empty()) cfg.templates_dir = fs::path(args.templates);
    const auto entries = generate_dataset(cfg, args.out);
    out << "wrote " << entries.size() << " images to " << args.out << "\n";
}

void run_train(const TrainArgs& args, std::ostream& out) {
    const fs::path data(args.data);
    const auto train_entries = filter_split(load_manifest_file(data / args.manifest, data), Split::Train);
    if (train_entries.empty()) throw Error(ErrorCode::EmptyDataset, "manifest has no train rows");

    std::vector<FeatureVector> vectors;
    vectors.reserve(train_entries.size());
    for (const auto& entry : train_entries) {
        try {
            vectors.push_back(image_features(load_netpbm_file(entry.path.string()), args.dot_ratio));
        } catch (const Error& e) {
            throw Error(e.code(), entry.path.string() + ": " + e.what());
        }
    }

    const FeatureMask mask = fit_feature_mask(vectors);
    std::vector<Sample> samples;
    samples.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        samples.push_back({apply_mask(vectors[i], mask), train_entries[i].label});
    }

    const auto result = train(samples, args.cfg, mask);
    write_text(args.model, save_model(result.model));
    for (std::size_t e = 0; e < result.loss_history.size(); ++e) {
        out << "epoch " << e + 1 << " loss " << format_fixed(result.loss_history[e], 6) << "\n";
    }
}

void run_recognize(const RecognizeArgs& args, std::ostream& out) {
    const Mlp model = read_model(args.model);
    const GrayImage img = load_netpbm_file(args.image);

    std::vector<Glyph> glyphs = segment_glyphs(clean_binary(img), args.dot_ratio);
    if (glyphs.empty()) throw Error(ErrorCode::Empty, args.image + ": no ink found");
    if (!args.page) glyphs = {largest_glyph(glyphs)};

    for (std::size_t i = 0; i < glyphs.size(); ++i) {
        const auto p = predict(model, extract_features(crop_normalize(glyphs[i])));
        out << i << "\t" << model.classes[p.label] << "\t" << format_fixed(p.confidence, 4) << "\n";
    }
}

void run_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
    const Mlp model = read_model(args.model);
    const fs::path data(args.data);
    const auto test_entries = filter_split(load_manifest_file(data / args.manifest, data), Split::Test);
    const auto report = evaluate(model, test_entries, args.dot_ratio);
    const auto rendered = render_report(report, model.classes);
    out << rendered.summary << "\n" << rendered.per_class;
    if (report.errors > 0) err << report.errors << " image(s) failed the pipeline and were not scored\n";
    if (!args.confusion.empty()) write_text(args.confusion, rendered.confusion_csv);
}

void run_segment(const SegmentArgs& args, std::ostream& out) {
    const GrayImage img = load_netpbm_file(args.image);
    const auto glyphs = page_glyphs(img, args.dot_ratio);
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + args.out_dir + ": " + ec.message());

    for (std::size_t k = 0; k < glyphs.size(); ++k) {
        BinaryImage mask(kGridSize, kGridSize);
        for (int r = 0; r < kGridSize; ++r) {
            for (int c = 0; c < kGridSize; ++c) mask.set(r, c, glyphs[k].at(r, c));
        }
        const auto path = (fs::path(args.out_dir) / ("glyph_" + std::to_string(k) + ".pgm")).string();
        save_pgm_file(to_gray(mask), path);
        out << path << "\n";
    }
}

void run_features(const FeaturesArgs& args, std::ostream& out) {
    const auto f = image_features(load_netpbm_file(args.image), args.dot_ratio);
    for (const double v : f) out << format_g17(v) << "\n";
}

void add_dot_ratio(CLI::App* cmd, double& target) {
    cmd->add_option("--dot-ratio", target, "Area ratio below which a component is treated as a diacritic")
        ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Offline Arabic handwritten character recognition"};
    app.name("aocr");
    app.require_subcommand(1);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic labelled corpus");
    synth_cmd->add_option("--out", synth.out, "Output directory")->required();
    synth_cmd->add_option("--per-class", synth.cfg.per_class, "Samples per class")->capture_default_str();
    synth_cmd->add_option("--noise", synth.cfg.noise_p, "Per-pixel flip probability")->capture_default_str();
    synth_cmd->add_option("--shift", synth.cfg.max_shift, "Maximum placement jitter in pixels")->capture_default_str();
    synth_cmd->add_option("--train-fraction", synth.cfg.train_fraction, "Fraction of each class used for training")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth.cfg.seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--templates", synth.templates, "Directory of <label>.pgm templates");

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "Train a classifier on the train split");
    train_cmd->add_option("--data", train_args.data, "Dataset directory")->required();
    train_cmd->add_option("--manifest", train_args.manifest, "Manifest file inside the dataset directory")
        ->capture_default_str();
    train_cmd->add_option("--hidden", train_args.cfg.hidden, "Hidden units")->capture_default_str()->check(CLI::PositiveNumber);
    train_cmd->add_option("--lr", train_args.cfg.lr, "Learning rate")->capture_default_str()->check(CLI::PositiveNumber);
    train_cmd->add_option("--epochs", train_args.cfg.epochs, "Training epochs")->capture_default_str()->check(CLI::PositiveNumber);
    train_cmd->add_option("--seed", train_args.cfg.seed, "Random seed")->capture_default_str();
    train_cmd->add_option("--model", train_args.model, "Output model file")->required();
    add_dot_ratio(train_cmd, train_args.dot_ratio);

    RecognizeArgs recognize;
    auto* recognize_cmd = app.add_subcommand("recognize", "Classify the glyph(s) in an image");
    recognize_cmd->add_option("--model", recognize.model, "Model file")->required();
    recognize_cmd->add_option("--image", recognize.image, "Netpbm image")->required();
    recognize_cmd->add_flag("--page", recognize.page, "Report every glyph in reading order");
    add_dot_ratio(recognize_cmd, recognize.dot_ratio);

    EvaluateArgs evaluate_args;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a model on the test split");
    evaluate_cmd->add_option("--model", evaluate_args.model, "Model file")->required();
    evaluate_cmd->add_option("--data", evaluate_args.data, "Dataset directory")->required();
    evaluate_cmd->add_option("--manifest", evaluate_args.manifest, "Manifest file inside the dataset directory")
        ->capture_default_str();
    evaluate_cmd->add_option("--confusion", evaluate_args.confusion, "Write the confusion matrix CSV here");
    add_dot_ratio(evaluate_cmd, evaluate_args.dot_ratio);

    SegmentArgs segment;
    auto* segment_cmd = app.add_subcommand("segment", "Dump normalized glyphs as glyph_<k>.pgm");
    segment_cmd->add_option("--image", segment.image, "Netpbm image")->required();
    segment_cmd->add_option("--out-dir", segment.out_dir, "Output directory")->required();
    add_dot_ratio(segment_cmd, segment.dot_ratio);

    FeaturesArgs features;
    auto* features_cmd = app.add_subcommand("features", "Print the 58 features of the largest glyph");
    features_cmd->add_option("--image", features.image, "Netpbm image")->required();
    add_dot_ratio(features_cmd, features.dot_ratio);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        const CLI::App* failing = &app;
        for (auto* sub : app.get_subcommands()) failing = sub;
        err << failing->help();
        return kExitUsage;
    }

    try {
        if (*synth_cmd) run_synth(synth, out);
        else if (*train_cmd) run_train(train_args, out);
        else if (*recognize_cmd) run_recognize(recognize, out);
        else if (*evaluate_cmd) run_evaluate(evaluate_args, out, err);
        else if (*segment_cmd) run_segment(segment, out);
        else if (*features_cmd) run_features(features, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_input_error(e.code()) ? kExitUsage : kExitPipeline;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
    return kExitOk;
}

}  // namespace aocr
