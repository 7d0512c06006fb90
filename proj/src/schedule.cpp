#include "mmdd/schedule.hpp"

#include <cmath>
#include <string>

#include "mmdd/errors.hpp"

namespace mmdd {

NoiseSchedule NoiseSchedule::linear(std::size_t total_steps, double beta_min, double beta_max) {
    if (total_steps == 0) throw InvalidArgument("NoiseSchedule: T must be >= 1");
    if (!(beta_min > 0.0) || !(beta_max < 1.0) || beta_min > beta_max) {
        throw InvalidArgument("NoiseSchedule: need 0 < beta_min <= beta_max < 1");
    }
    NoiseSchedule s;
    s.total_steps = total_steps;
    s.beta_min = beta_min;
    s.beta_max = beta_max;
    s.betas.resize(total_steps);
    s.gammas.resize(total_steps);
    double prod = 1.0;
    for (std::size_t t = 0; t < total_steps; ++t) {
        const double frac =
            total_steps > 1 ? static_cast<double>(t) / static_cast<double>(total_steps - 1) : 0.0;
        s.betas[t] = beta_min + (beta_max - beta_min) * frac;
        prod *= 1.0 - s.betas[t];
        s.gammas[t] = prod;
    }
    s.validate();
    return s;
}

void NoiseSchedule::validate() const {
    if (betas.size() != total_steps || gammas.size() != total_steps) {
        throw InvalidArgument("NoiseSchedule: array lengths != T");
    }
    double prev = 1.0;
    for (std::size_t t = 0; t < total_steps; ++t) {
        if (!(gammas[t] > 0.0) || !(gammas[t] < 1.0) || !(gammas[t] < prev)) {
            throw InvalidArgument("NoiseSchedule: gamma not strictly decreasing in (0,1) at t=" +
                                  std::to_string(t));
        }
        prev = gammas[t];
    }
}

StepPlan make_step_plan(std::size_t total_steps, std::size_t steps) {
    if (steps < 1 || steps > total_steps) {
        throw InvalidArgument("make_step_plan: steps " + std::to_string(steps) +
                              " out of range [1, " + std::to_string(total_steps) + "]");
    }
    StepPlan plan;
    plan.step_count = steps;
    plan.timesteps.resize(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        // floor((T-1) - i*T/S) == (T-1) - ceil(i*T/S), all in exact integers.
        const std::size_t offset = (i * total_steps + steps - 1) / steps;
        plan.timesteps[i] = (total_steps - 1) - offset;
    }
    return plan;
}

DenseArray forward_noise(const NoiseSchedule& schedule, const DenseArray& z0, std::size_t t,
                         const DenseArray& eps) {
    if (t >= schedule.total_steps) {
        throw InvalidArgument("forward_noise: timestep " + std::to_string(t) +
                              " out of range [0, " + std::to_string(schedule.total_steps) + ")");
    }
    require_same_shape(z0, eps, "forward_noise");
    const double g = schedule.gammas[t];
    const double a = std::sqrt(g);
    const double b = std::sqrt(1.0 - g);
    DenseArray out = z0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.data[i] = a * z0.data[i] + b * eps.data[i];
    }
    require_finite(out, "forward_noise");
    return out;
}

DenseArray predict_clean(const NoiseSchedule& schedule, const DenoiserModel& model,
                         const DenseArray& z_t, std::size_t t, const ConditionEmbedding& c) {
    if (t >= schedule.total_steps) {
        throw InvalidArgument("predict_clean: timestep " + std::to_string(t) +
                              " out of range [0, " + std::to_string(schedule.total_steps) + ")");
    }
    const DenseArray eps_hat = denoiser_forward(model, z_t, t, c);
    DenseArray out = z_t;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.data[i] = z_t.data[i] - eps_hat.data[i];
    }
    return out;
}

} // namespace mmdd
