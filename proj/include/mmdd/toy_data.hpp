#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "mmdd/trainer.hpp"

namespace mmdd {

enum class ToyKind { GaussianMixture, RingClasses, GridDigits };

std::string toy_kind_name(ToyKind kind);
ToyKind toy_kind_from_name(const std::string& name);

// Synthetic stand-in for an image dataset. dim 0 resolves per kind
// (2 for mixtures/rings, 64 for grid digits).
struct ToyDatasetSpec {
    ToyKind kind = ToyKind::GaussianMixture;
    std::size_t classes = 4;
    std::size_t dim = 0;
    std::size_t samples_per_class = 500;
    double separation = 6.0;
    std::uint64_t seed = 0;

    std::size_t resolved_dim() const;
    void validate() const;
};

// Deterministic per seed; 80/20 stratified train/test split.
std::pair<LabeledSet, LabeledSet> synth_dataset(const ToyDatasetSpec& spec);

} // namespace mmdd
