#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mmdd {

struct AdamConfig {
    double lr = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t step = 0;

    explicit AdamState(std::size_t param_count = 0)
        : m(param_count, 0.0), v(param_count, 0.0) {}
};

// One bias-corrected Adam update in place.
void adam_step(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
               const AdamConfig& cfg);

} // namespace mmdd
