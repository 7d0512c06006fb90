#include "mmdd/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "mmdd/errors.hpp"

namespace mmdd {

void EvalConfig::validate() const {
    if (!(lr > 0.0)) throw ConfigError("eval: learning rate must be positive");
    if (momentum < 0.0 || momentum >= 1.0) throw ConfigError("eval: momentum must be in [0, 1)");
    if (weight_decay < 0.0) throw ConfigError("eval: weight decay must be >= 0");
    if (repeats == 0) throw ConfigError("eval: repeats must be >= 1");
}

namespace {

// Mean cross-entropy over the set; fills grads (flat, += semantics is not
// needed since we zero first).
double cross_entropy_pass(const Classifier& clf, const LabeledSet& data,
                          std::vector<double>& grads) {
    grads.assign(clf.mlp.param_count(), 0.0);
    const double inv_n = 1.0 / static_cast<double>(data.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        MlpCache cache;
        const auto logits = clf.mlp.forward(data.samples[i], &cache);

        double mx = logits[0];
        for (double v : logits) mx = std::max(mx, v);
        double z = 0.0;
        for (double v : logits) z += std::exp(v - mx);
        const double log_z = std::log(z) + mx;
        loss += (log_z - logits[data.labels[i]]) * inv_n;

        std::vector<double> d_logits(logits.size());
        for (std::size_t k = 0; k < logits.size(); ++k) {
            const double p = std::exp(logits[k] - log_z);
            d_logits[k] = (p - (k == data.labels[i] ? 1.0 : 0.0)) * inv_n;
        }
        clf.mlp.backward(cache, d_logits, grads);
    }
    return loss;
}

} // namespace

Classifier train_classifier(const LabeledSet& data, const EvalConfig& cfg, Rng& rng) {
    cfg.validate();
    data.validate();
    if (data.size() == 0) throw DegenerateData("train_classifier: empty training set");
    std::set<std::size_t> present(data.labels.begin(), data.labels.end());
    if (present.size() < 2) {
        throw DegenerateData("train_classifier: need samples from >= 2 classes, got " +
                             std::to_string(present.size()));
    }

    Classifier clf;
    clf.input_dim = data.dim;
    clf.class_count = data.class_count;
    std::vector<std::size_t> dims;
    dims.push_back(data.dim);
    for (std::size_t h : cfg.hidden) dims.push_back(h);
    dims.push_back(data.class_count);
    clf.mlp = Mlp(std::move(dims), Activation::Relu);
    clf.mlp.init_params(rng, /*zero_final_layer=*/false);

    std::vector<double> params = clf.mlp.flatten_params();
    std::vector<double> velocity(params.size(), 0.0);
    std::vector<double> grads;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double loss = cross_entropy_pass(clf, data, grads);
        if (!std::isfinite(loss)) {
            throw NumericError("train_classifier: non-finite loss", epoch);
        }
        for (std::size_t i = 0; i < params.size(); ++i) {
            velocity[i] = cfg.momentum * velocity[i] + grads[i] + cfg.weight_decay * params[i];
            params[i] -= cfg.lr * velocity[i];
        }
        clf.mlp.set_params(params);
    }
    return clf;
}

double evaluate(const Classifier& clf, const LabeledSet& test) {
    test.validate();
    if (test.size() == 0) throw InvalidArgument("evaluate: empty test set");
    if (test.dim != clf.input_dim) {
        throw InvalidArgument("evaluate: test dim " + std::to_string(test.dim) +
                              " != classifier input dim " + std::to_string(clf.input_dim));
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        const auto logits = clf.mlp.forward(test.samples[i]);
        std::size_t arg = 0;
        for (std::size_t k = 1; k < logits.size(); ++k) {
            if (logits[k] > logits[arg]) arg = k;
        }
        if (arg == test.labels[i]) ++correct;
    }
    return 100.0 * static_cast<double>(correct) / static_cast<double>(test.size());
}

double accuracy_gain(double accuracy_percent, std::size_t n_samples) {
    if (n_samples == 0) throw InvalidArgument("accuracy_gain: sample count must be >= 1");
    return 1000.0 * accuracy_percent / static_cast<double>(n_samples);
}

EvalResult evaluate_repeats(const LabeledSet& surrogate, const LabeledSet& test,
                            const EvalConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    EvalResult result;
    result.samples = surrogate.size();
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
        Rng rng(derive_seed(seed, 0xE7A10000u + r));
        const Classifier clf = train_classifier(surrogate, cfg, rng);
        result.per_repeat.push_back(evaluate(clf, test));
    }

    std::vector<double> sorted = result.per_repeat;
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double a : sorted) sum += a;
    result.mean = sum / static_cast<double>(sorted.size());
    double var = 0.0;
    for (double a : sorted) var += (a - result.mean) * (a - result.mean);
    result.stddev = std::sqrt(var / static_cast<double>(sorted.size()));
    result.gain = accuracy_gain(result.mean, result.samples);
    return result;
}

} // namespace mmdd
