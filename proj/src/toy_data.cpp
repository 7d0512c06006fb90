#include "mmdd/toy_data.hpp"

#include <cmath>

#include "mmdd/errors.hpp"
#include "mmdd/rng.hpp"

namespace mmdd {

std::string toy_kind_name(ToyKind kind) {
    switch (kind) {
    case ToyKind::GaussianMixture: return "gaussian_mixture";
    case ToyKind::RingClasses: return "ring_classes";
    case ToyKind::GridDigits: return "grid_digits";
    }
    return "unknown";
}

ToyKind toy_kind_from_name(const std::string& name) {
    if (name == "gaussian_mixture") return ToyKind::GaussianMixture;
    if (name == "ring_classes") return ToyKind::RingClasses;
    if (name == "grid_digits") return ToyKind::GridDigits;
    throw ConfigError("unknown dataset kind '" + name + "'");
}

std::size_t ToyDatasetSpec::resolved_dim() const {
    if (dim != 0) return dim;
    return kind == ToyKind::GridDigits ? 64 : 2;
}

void ToyDatasetSpec::validate() const {
    if (classes < 2) throw ConfigError("dataset: need at least 2 classes");
    if (samples_per_class == 0) throw ConfigError("dataset: samples_per_class must be >= 1");
    if (!(separation > 0.0)) throw ConfigError("dataset: separation must be positive");
    const std::size_t d = resolved_dim();
    if (kind == ToyKind::GridDigits) {
        if (d != 64) throw ConfigError("dataset: grid_digits requires dim 64 (8x8 glyphs)");
    } else if (d < 2) {
        throw ConfigError("dataset: " + toy_kind_name(kind) + " requires dim >= 2");
    }
}

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

std::vector<double> draw_sample(const ToyDatasetSpec& spec, std::size_t class_id, Rng& rng,
                                const std::vector<std::vector<double>>& glyphs) {
    const std::size_t d = spec.resolved_dim();
    std::vector<double> x(d, 0.0);
    switch (spec.kind) {
    case ToyKind::GaussianMixture: {
        // Class means on a circle of radius `separation`, unit covariance.
        const double angle = kTau * static_cast<double>(class_id) /
                             static_cast<double>(spec.classes);
        x[0] = spec.separation * std::cos(angle);
        x[1] = spec.separation * std::sin(angle);
        for (std::size_t k = 0; k < d; ++k) x[k] += rng.normal();
        break;
    }
    case ToyKind::RingClasses: {
        const double radius = spec.separation * static_cast<double>(class_id + 1);
        const double noise = 0.1 * spec.separation;
        const double angle = kTau * rng.uniform01();
        x[0] = radius * std::cos(angle) + noise * rng.normal();
        x[1] = radius * std::sin(angle) + noise * rng.normal();
        for (std::size_t k = 2; k < d; ++k) x[k] = noise * rng.normal();
        break;
    }
    case ToyKind::GridDigits: {
        // Fixed per-class binary glyph scaled by separation, plus pixel noise.
        const auto& glyph = glyphs[class_id];
        for (std::size_t k = 0; k < d; ++k) x[k] = glyph[k] * spec.separation + rng.normal();
        break;
    }
    }
    return x;
}

} // namespace

std::pair<LabeledSet, LabeledSet> synth_dataset(const ToyDatasetSpec& spec) {
    spec.validate();
    const std::size_t d = spec.resolved_dim();

    std::vector<std::vector<double>> glyphs;
    if (spec.kind == ToyKind::GridDigits) {
        glyphs.resize(spec.classes);
        for (std::size_t c = 0; c < spec.classes; ++c) {
            Rng glyph_rng(derive_seed(spec.seed, 0x61590000u + c));
            glyphs[c].resize(64);
            for (auto& p : glyphs[c]) p = glyph_rng.uniform01() < 0.5 ? 0.0 : 1.0;
        }
    }

    LabeledSet train, test;
    train.dim = test.dim = d;
    train.class_count = test.class_count = spec.classes;

    const std::size_t n_test = spec.samples_per_class / 5;
    const std::size_t n_train = spec.samples_per_class - n_test;
    for (std::size_t c = 0; c < spec.classes; ++c) {
        Rng rng(derive_seed(spec.seed, 0xDA7A0000u + c));
        for (std::size_t i = 0; i < spec.samples_per_class; ++i) {
            auto x = draw_sample(spec, c, rng, glyphs);
            if (i < n_train) {
                train.samples.push_back(std::move(x));
                train.labels.push_back(c);
            } else {
                test.samples.push_back(std::move(x));
                test.labels.push_back(c);
            }
        }
    }
    train.validate();
    test.validate();
    return {std::move(train), std::move(test)};
}

} // namespace mmdd
