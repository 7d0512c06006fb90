#pragma once

#include <cstddef>
#include <functional>

#include "mmdd/array.hpp"
#include "mmdd/denoiser.hpp"
#include "mmdd/rng.hpp"
#include "mmdd/schedule.hpp"

namespace mmdd {

// Noise predictor hook for the sampler; lets tests plant an exact oracle.
using NoisePredictor =
    std::function<DenseArray(const DenseArray& z_t, std::size_t t, const ConditionEmbedding& c)>;

// Deterministic reverse sampling (eta = 0). Starts from z ~ N(0, I) drawn
// from rng, walks the plan's descending timesteps with
//   x0_hat = (z_t - sqrt(1-gamma_t) eps_hat) / sqrt(gamma_t)
//   z_t'   = sqrt(gamma_t') x0_hat + sqrt(1-gamma_t') eps_hat
// and returns the final x0_hat. Throws NumericError with the plan step index
// if an intermediate goes non-finite.
DenseArray reverse_sample(const NoiseSchedule& schedule, const NoisePredictor& predict,
                          const StepPlan& plan, const ConditionEmbedding& c,
                          std::size_t latent_dim, Rng& rng);

DenseArray reverse_sample(const NoiseSchedule& schedule, const DenoiserModel& model,
                          const StepPlan& plan, const ConditionEmbedding& c, Rng& rng);

} // namespace mmdd
