#include "aocr/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "aocr/error.hpp"

namespace aocr {

std::array<std::string, kClassCount> Mlp::default_classes() {
    std::array<std::string, kClassCount> out;
    for (std::size_t i = 0; i < kClassCount; ++i) out[i] = std::string(kClassLabels[i]);
    return out;
}

Mlp init_network(Rng& rng, std::size_t hidden, std::size_t d_in) {
    if (hidden == 0 || d_in == 0) throw Error(ErrorCode::Dim, "network dimensions must be positive");

    Mlp m;
    m.d_in = d_in;
    m.hidden = hidden;
    m.mask = FeatureMask::prefix(std::min(d_in, kFeatureCount));

    const double a1 = std::sqrt(6.0 / static_cast<double>(d_in + hidden));
    const double a2 = std::sqrt(6.0 / static_cast<double>(hidden + kClassCount));
    m.w1.resize(hidden * d_in);
    for (auto& w : m.w1) w = a1 * (2.0 * rng.next_unit() - 1.0);
    m.w2.resize(kClassCount * hidden);
    for (auto& w : m.w2) w = a2 * (2.0 * rng.next_unit() - 1.0);
    m.b1.assign(hidden, 0.0);
    m.b2.assign(kClassCount, 0.0);
    return m;
}

Mlp init_network(std::uint64_t seed, std::size_t hidden, std::size_t d_in) {
    Rng rng(seed);
    return init_network(rng, hidden, d_in);
}

namespace {

void check_input(const Mlp& m, std::span<const double> x) {
    if (x.size() != m.d_in) {
        throw Error(ErrorCode::Dim, "input has " + std::to_string(x.size()) + " features, model expects " +
                                        std::to_string(m.d_in));
    }
}

void hidden_layer(const Mlp& m, std::span<const double> x, std::vector<double>& h) {
    h.resize(m.hidden);
    for (std::size_t i = 0; i < m.hidden; ++i) {
        double a = m.b1[i];
        const double* row = &m.w1[i * m.d_in];
        for (std::size_t j = 0; j < m.d_in; ++j) a += row[j] * x[j];
        h[i] = 1.0 / (1.0 + std::exp(-a));
    }
}

std::array<double, kClassCount> output_layer(const Mlp& m, const std::vector<double>& h) {
    std::array<double, kClassCount> z{};
    for (std::size_t k = 0; k < kClassCount; ++k) {
        double a = m.b2[k];
        const double* row = &m.w2[k * m.hidden];
        for (std::size_t i = 0; i < m.hidden; ++i) a += row[i] * h[i];
        z[k] = a;
    }

    const double z_max = *std::max_element(z.begin(), z.end());
    double total = 0.0;
    for (auto& v : z) {
        v = std::exp(v - z_max);
        total += v;
    }
    // Floored at the smallest normal double so every probability stays
    // strictly positive (and -ln p finite) even when a logit gap underflows.
    for (auto& v : z) v = std::max(v / total, std::numeric_limits<double>::min());
    return z;
}

// Fills g (already sized) and returns the loss.
double backprop(const Mlp& m, std::span<const double> x, std::size_t y, std::vector<double>& h,
                Gradients& g) {
    hidden_layer(m, x, h);
    const auto p = output_layer(m, h);
    const double loss = -std::log(p[y]);

    std::array<double, kClassCount> dz{};
    for (std::size_t k = 0; k < kClassCount; ++k) dz[k] = p[k] - (k == y ? 1.0 : 0.0);

    for (std::size_t k = 0; k < kClassCount; ++k) {
        g.b2[k] = dz[k];
        double* row = &g.w2[k * m.hidden];
        for (std::size_t i = 0; i < m.hidden; ++i) row[i] = dz[k] * h[i];
    }
    for (std::size_t i = 0; i < m.hidden; ++i) {
        double dh = 0.0;
        for (std::size_t k = 0; k < kClassCount; ++k) dh += m.w2[k * m.hidden + i] * dz[k];
        const double da = dh * h[i] * (1.0 - h[i]);
        g.b1[i] = da;
        double* row = &g.w1[i * m.d_in];
        for (std::size_t j = 0; j < m.d_in; ++j) row[j] = da * x[j];
    }
    return loss;
}

Gradients zero_gradients(const Mlp& m) {
    return Gradients{std::vector<double>(m.w1.size(), 0.0), std::vector<double>(m.b1.size(), 0.0),
                     std::vector<double>(m.w2.size(), 0.0), std::vector<double>(m.b2.size(), 0.0)};
}

void descend(std::vector<double>& params, const std::vector<double>& grad, double lr) {
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr * grad[i];
}

}  // namespace

std::array<double, kClassCount> forward(const Mlp& m, std::span<const double> x) {
    check_input(m, x);
    std::vector<double> h;
    hidden_layer(m, x, h);
    return output_layer(m, h);
}

LossAndGradients loss_and_gradients(const Mlp& m, std::span<const double> x, std::size_t y) {
    check_input(m, x);
    if (y >= kClassCount) throw Error(ErrorCode::Dim, "class index " + std::to_string(y) + " out of range");
    LossAndGradients out{0.0, zero_gradients(m)};
    std::vector<double> h;
    out.loss = backprop(m, x, y, h, out.grad);
    return out;
}

TrainResult train(std::span<const Sample> samples, const TrainConfig& cfg, const FeatureMask& mask) {
    if (samples.empty()) throw Error(ErrorCode::EmptyDataset, "no training samples");
    if (cfg.hidden == 0 || cfg.epochs < 1 || !(cfg.lr > 0.0)) {
        throw Error(ErrorCode::Dim, "invalid training configuration");
    }
    const std::size_t d_in = samples.front().x.size();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].x.size() != d_in) {
            throw Error(ErrorCode::Dim, "sample " + std::to_string(i) + " has " +
                                            std::to_string(samples[i].x.size()) + " features, expected " +
                                            std::to_string(d_in));
        }
        if (samples[i].label >= kClassCount) {
            throw Error(ErrorCode::Dim, "sample " + std::to_string(i) + " has class index out of range");
        }
    }

    Rng rng(cfg.seed);
    TrainResult result{init_network(rng, cfg.hidden, d_in), {}};
    Mlp& m = result.model;
    m.mask = mask;

    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    Gradients g = zero_gradients(m);
    std::vector<double> h;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t i = order.size() - 1; i >= 1; --i) {
            const auto j = static_cast<std::size_t>(rng.next() % (i + 1));
            std::swap(order[i], order[j]);
        }
        double loss_sum = 0.0;
        for (const std::size_t idx : order) {
            loss_sum += backprop(m, samples[idx].x, samples[idx].label, h, g);
            descend(m.w1, g.w1, cfg.lr);
            descend(m.b1, g.b1, cfg.lr);
            descend(m.w2, g.w2, cfg.lr);
            descend(m.b2, g.b2, cfg.lr);
        }
        result.loss_history.push_back(loss_sum / static_cast<double>(samples.size()));
    }
    return result;
}

TrainResult train(std::span<const Sample> samples, const TrainConfig& cfg) {
    if (samples.empty()) throw Error(ErrorCode::EmptyDataset, "no training samples");
    const std::size_t d_in = samples.front().x.size();
    if (d_in == 0) throw Error(ErrorCode::Dim, "samples have no features");
    return train(samples, cfg, FeatureMask::prefix(std::min(d_in, kFeatureCount)));
}

Prediction predict(const Mlp& m, const FeatureVector& v) {
    if (m.mask.kept_count() != m.d_in) {
        throw Error(ErrorCode::Dim, "model mask keeps " + std::to_string(m.mask.kept_count()) +
                                        " features but d_in is " + std::to_string(m.d_in));
    }
    const auto reduced = apply_mask(v, m.mask);
    const auto p = forward(m, reduced);
    std::size_t best = 0;
    for (std::size_t k = 1; k < kClassCount; ++k) {
        if (p[k] > p[best]) best = k;
    }
    return {best, p[best]};
}

namespace {

void append_value(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    out.append(buf, res.ptr);
    out.push_back('\n');
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    std::size_t line_number() const { return line_; }

    // Returns false at end of input.
    bool next(std::string_view& out) {
        if (pos_ >= text_.size()) return false;
        const auto end = text_.find('\n', pos_);
        const auto stop = end == std::string_view::npos ? text_.size() : end;
        out = text_.substr(pos_, stop - pos_);
        if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
        pos_ = end == std::string_view::npos ? text_.size() : end + 1;
        ++line_;
        return true;
    }

    std::string_view require(const char* what) {
        std::string_view line;
        if (!next(line)) {
            throw Error(ErrorCode::Truncated,
                        "line " + std::to_string(line_ + 1) + ": missing " + what);
        }
        return line;
    }

    [[noreturn]] void fail(ErrorCode code, const std::string& what) const {
        throw Error(code, "line " + std::to_string(line_) + ": " + what);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto at = s.find(sep, start);
        out.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

std::string save_model(const Mlp& m) {
    std::string out = "AOCR1\n";
    out += "dims " + std::to_string(m.d_in) + " " + std::to_string(m.hidden) + " " +
           std::to_string(kClassCount) + "\n";
    out += "mask ";
    for (std::size_t i = 0; i < kFeatureCount; ++i) out.push_back(m.mask.keeps(i) ? '1' : '0');
    out += "\nclasses ";
    for (std::size_t k = 0; k < kClassCount; ++k) {
        if (k > 0) out.push_back(',');
        out += m.classes[k];
    }
    out.push_back('\n');
    for (const auto* block : {&m.w1, &m.b1, &m.w2, &m.b2}) {
        for (const double v : *block) append_value(out, v);
    }
    return out;
}

Mlp load_model(std::string_view text) {
    LineReader in(text);
    std::string_view line;
    if (!in.next(line) || line != "AOCR1") {
        throw Error(ErrorCode::Magic, "line 1: expected magic AOCR1");
    }

    line = in.require("dims line");
    const auto dims = split(line, ' ');
    std::size_t d_in = 0;
    std::size_t hidden = 0;
    std::size_t d_out = 0;
    if (dims.size() != 4 || dims[0] != "dims" || !parse_number(dims[1], d_in) ||
        !parse_number(dims[2], hidden) || !parse_number(dims[3], d_out)) {
        in.fail(ErrorCode::Format, "malformed dims line");
    }
    if (d_out != kClassCount || d_in == 0 || d_in > kFeatureCount || hidden == 0) {
        in.fail(ErrorCode::DimMismatch, "unsupported dimensions " + std::string(line));
    }

    line = in.require("mask line");
    if (line.substr(0, 5) != "mask " || line.size() != 5 + kFeatureCount) {
        in.fail(ErrorCode::DimMismatch, "mask must hold 58 flags");
    }
    std::array<bool, kFeatureCount> keep{};
    std::size_t kept = 0;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        const char c = line[5 + i];
        if (c != '0' && c != '1') in.fail(ErrorCode::Format, "mask flags must be 0 or 1");
        keep[i] = c == '1';
        kept += keep[i] ? 1 : 0;
    }
    if (kept != d_in) {
        in.fail(ErrorCode::DimMismatch,
                "mask keeps " + std::to_string(kept) + " features but d_in is " + std::to_string(d_in));
    }

    line = in.require("classes line");
    if (line.substr(0, 8) != "classes ") in.fail(ErrorCode::Format, "expected classes line");
    const auto labels = split(line.substr(8), ',');
    if (labels.size() != kClassCount) {
        in.fail(ErrorCode::DimMismatch, "expected 28 class labels, found " + std::to_string(labels.size()));
    }

    Mlp m;
    m.d_in = d_in;
    m.hidden = hidden;
    m.mask = FeatureMask(keep);
    for (std::size_t k = 0; k < kClassCount; ++k) m.classes[k] = std::string(labels[k]);
    m.w1.resize(hidden * d_in);
    m.b1.resize(hidden);
    m.w2.resize(kClassCount * hidden);
    m.b2.resize(kClassCount);
    for (auto* block : {&m.w1, &m.b1, &m.w2, &m.b2}) {
        for (double& v : *block) {
            line = in.require("weight value");
            if (!parse_number(line, v) || !std::isfinite(v)) {
                in.fail(ErrorCode::Format, "not a finite number: '" + std::string(line) + "'");
            }
        }
    }
    while (in.next(line)) {
        if (!line.empty()) in.fail(ErrorCode::DimMismatch, "unexpected trailing data");
    }
    return m;
}

}  // namespace aocr
