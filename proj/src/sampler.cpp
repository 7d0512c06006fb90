#include "mmdd/sampler.hpp"

#include <cmath>
#include <string>

#include "mmdd/errors.hpp"

namespace mmdd {

DenseArray reverse_sample(const NoiseSchedule& schedule, const NoisePredictor& predict,
                          const StepPlan& plan, const ConditionEmbedding& c,
                          std::size_t latent_dim, Rng& rng) {
    if (plan.step_count == 0 || plan.timesteps.size() != plan.step_count) {
        throw InvalidArgument("reverse_sample: empty or inconsistent step plan");
    }
    for (std::size_t i = 0; i < plan.timesteps.size(); ++i) {
        if (plan.timesteps[i] >= schedule.total_steps) {
            throw InvalidArgument("reverse_sample: plan timestep " +
                                  std::to_string(plan.timesteps[i]) + " out of schedule range");
        }
        if (i > 0 && plan.timesteps[i] >= plan.timesteps[i - 1]) {
            throw InvalidArgument("reverse_sample: plan timesteps not strictly descending");
        }
    }

    DenseArray z = DenseArray::vector(rng.normal_vec(latent_dim));
    for (std::size_t i = 0; i < plan.step_count; ++i) {
        const std::size_t t = plan.timesteps[i];
        const double gamma_t = schedule.gammas[t];
        const DenseArray eps_hat = predict(z, t, c);
        if (eps_hat.size() != latent_dim) {
            throw InvalidArgument("reverse_sample: predictor output dim " +
                                  std::to_string(eps_hat.size()) + " != latent dim " +
                                  std::to_string(latent_dim));
        }

        const double inv_sa = 1.0 / std::sqrt(gamma_t);
        const double sb = std::sqrt(1.0 - gamma_t);
        DenseArray x0 = DenseArray::zeros({latent_dim});
        for (std::size_t k = 0; k < latent_dim; ++k) {
            x0.data[k] = (z.data[k] - sb * eps_hat.data[k]) * inv_sa;
        }
        for (double v : x0.data) {
            if (!std::isfinite(v)) {
                throw NumericError("reverse_sample: non-finite x0 estimate", i);
            }
        }

        if (i + 1 == plan.step_count) return x0;

        const std::size_t t_next = plan.timesteps[i + 1];
        const double sa_next = std::sqrt(schedule.gammas[t_next]);
        const double sb_next = std::sqrt(1.0 - schedule.gammas[t_next]);
        for (std::size_t k = 0; k < latent_dim; ++k) {
            z.data[k] = sa_next * x0.data[k] + sb_next * eps_hat.data[k];
        }
        for (double v : z.data) {
            if (!std::isfinite(v)) {
                throw NumericError("reverse_sample: non-finite latent", i);
            }
        }
    }
    return z; // unreachable
}

DenseArray reverse_sample(const NoiseSchedule& schedule, const DenoiserModel& model,
                          const StepPlan& plan, const ConditionEmbedding& c, Rng& rng) {
    NoisePredictor predict = [&model](const DenseArray& z_t, std::size_t t,
                                      const ConditionEmbedding& cond) {
        return denoiser_forward(model, z_t, t, cond);
    };
    return reverse_sample(schedule, predict, plan, c, model.config.latent_dim, rng);
}

} // namespace mmdd
