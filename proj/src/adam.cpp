#include "mmdd/adam.hpp"

#include <cmath>
#include <string>

#include "mmdd/errors.hpp"

namespace mmdd {

void adam_step(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
               const AdamConfig& cfg) {
    if (params.size() != grads.size() || params.size() != state.m.size() ||
        params.size() != state.v.size()) {
        throw InvalidArgument("adam_step: size mismatch (params " + std::to_string(params.size()) +
                              ", grads " + std::to_string(grads.size()) + ", state " +
                              std::to_string(state.m.size()) + ")");
    }
    if (!(cfg.lr > 0.0) || !(cfg.eps > 0.0)) {
        throw InvalidArgument("adam_step: lr and eps must be positive");
    }

    state.step += 1;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
        state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
    }
}

} // namespace mmdd
