#pragma once

#include <cstddef>
#include <vector>

#include "mmdd/array.hpp"
#include "mmdd/denoiser.hpp"

namespace mmdd {

// Forward-noising schedule: betas linear in t, gammas the running product of
// (1 - beta). gamma decays strictly from near 1 to near 0.
struct NoiseSchedule {
    std::size_t total_steps = 0; // T
    double beta_min = 0.0;
    double beta_max = 0.0;
    std::vector<double> betas;
    std::vector<double> gammas;

    static NoiseSchedule linear(std::size_t total_steps = 1000, double beta_min = 1e-4,
                                double beta_max = 2e-2);

    void validate() const;
};

// Descending inference timesteps. Positions are floor((T-1) - i*T/S), i.e.
// uniform real stride T/S anchored at T-1; a plan with S/k steps visits an
// exact subset of the S-step plan's positions.
struct StepPlan {
    std::size_t step_count = 0;
    std::vector<std::size_t> timesteps;
};

StepPlan make_step_plan(std::size_t total_steps, std::size_t steps);

// z_t = sqrt(gamma_t) z0 + sqrt(1 - gamma_t) eps
DenseArray forward_noise(const NoiseSchedule& schedule, const DenseArray& z0, std::size_t t,
                         const DenseArray& eps);

// zhat = z_t - eps_hat, the literal clean-feature prediction used by the
// min-max losses (no 1/sqrt(gamma) rescale).
DenseArray predict_clean(const NoiseSchedule& schedule, const DenoiserModel& model,
                         const DenseArray& z_t, std::size_t t, const ConditionEmbedding& c);

} // namespace mmdd
