#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mmdd/mlp.hpp"
#include "mmdd/rng.hpp"
#include "mmdd/trainer.hpp"

namespace mmdd {

struct EvalConfig {
    std::vector<std::size_t> hidden = {128};
    double lr = 0.01;
    double momentum = 0.9;
    double weight_decay = 5e-4;
    std::size_t epochs = 200;
    std::size_t repeats = 3;

    void validate() const;
};

struct Classifier {
    std::size_t input_dim = 0;
    std::size_t class_count = 0;
    Mlp mlp; // ReLU hidden layers, linear logits
};

// Softmax cross-entropy training with full-batch momentum SGD and weight
// decay; deterministic per rng state. Requires samples from >= 2 classes.
Classifier train_classifier(const LabeledSet& data, const EvalConfig& cfg, Rng& rng);

// Percent of argmax-correct predictions (ties pick the lowest class id).
double evaluate(const Classifier& clf, const LabeledSet& test);

// Per-sample quality proxy in 1e-3 %/sample units: 1000 * accuracy / n.
double accuracy_gain(double accuracy_percent, std::size_t n_samples);

struct EvalResult {
    std::vector<double> per_repeat; // percent, in run order
    double mean = 0.0;
    double stddev = 0.0; // population std over repeats
    std::size_t samples = 0;
    double gain = 0.0;
};

// Trains `repeats` classifiers with derived seeds and aggregates accuracies
// (sorted before reduction so the result is order-independent).
EvalResult evaluate_repeats(const LabeledSet& surrogate, const LabeledSet& test,
                            const EvalConfig& cfg, std::uint64_t seed);

} // namespace mmdd
