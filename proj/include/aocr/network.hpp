#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aocr/classes.hpp"
#include "aocr/features.hpp"
#include "aocr/rng.hpp"

namespace aocr {

/// One hidden sigmoid layer, softmax output over the 28 classes.
/// Weight matrices are row-major: w1 is hidden x d_in, w2 is 28 x hidden.
struct Mlp {
    std::size_t d_in = 0;
    std::size_t hidden = 0;
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    std::vector<double> b2;
    FeatureMask mask = FeatureMask::all();
    std::array<std::string, kClassCount> classes = default_classes();

    static std::array<std::string, kClassCount> default_classes();

    friend bool operator==(const Mlp&, const Mlp&) = default;
};

struct TrainConfig {
    std::size_t hidden = 64;
    double lr = 0.1;
    int epochs = 30;
    std::uint64_t seed = 1;
};

struct Sample {
    std::vector<double> x;
    std::size_t label = 0;
};

/// Same layout as the parameters of an Mlp.
struct Gradients {
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    std::vector<double> b2;
};

struct LossAndGradients {
    double loss = 0.0;
    Gradients grad;
};

struct TrainResult {
    Mlp model;
    std::vector<double> loss_history;
};

struct Prediction {
    std::size_t label = 0;
    double confidence = 0.0;
};

/// Uniform(-a, a) weights with a = sqrt(6 / (fan_in + fan_out)), W1 then W2,
/// zero biases. The mask defaults to the first min(d_in, 58) features.
Mlp init_network(std::uint64_t seed, std::size_t hidden, std::size_t d_in);
Mlp init_network(Rng& rng, std::size_t hidden, std::size_t d_in);

/// Class probabilities. Throws Error(Dim) if x.size() != d_in.
std::array<double, kClassCount> forward(const Mlp& m, std::span<const double> x);

/// Cross-entropy loss -ln p[y] and its gradients by backpropagation.
LossAndGradients loss_and_gradients(const Mlp& m, std::span<const double> x, std::size_t y);

/// Per-sample SGD over a seeded Fisher-Yates shuffle each epoch.
/// Throws Error(EmptyDataset) or Error(Dim).
TrainResult train(std::span<const Sample> samples, const TrainConfig& cfg);
/// As above, recording the feature mask that produced the sample vectors.
TrainResult train(std::span<const Sample> samples, const TrainConfig& cfg, const FeatureMask& mask);

/// Applies the model's mask and returns the argmax (lowest index on ties).
Prediction predict(const Mlp& m, const FeatureVector& v);

std::string save_model(const Mlp& m);
/// Throws Error(Magic), Error(Truncated), Error(DimMismatch) or Error(Format),
/// each naming the offending line.
Mlp load_model(std::string_view text);

}  // namespace aocr
