#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mmdd/array.hpp"
#include "mmdd/mlp.hpp"
#include "mmdd/rng.hpp"

namespace mmdd {

enum class ClassEmbedMode { OneHot, Learned };

struct DenoiserConfig {
    std::size_t latent_dim = 0;
    std::size_t class_count = 0;
    std::size_t total_timesteps = 1000;
    std::size_t time_embed_dim = 16;
    ClassEmbedMode embed_mode = ClassEmbedMode::OneHot;
    std::size_t class_embed_dim = 16; // learned mode only
    std::vector<std::size_t> hidden = {128, 128};
    Activation activation = Activation::Tanh;

    std::size_t class_embed_width() const {
        return embed_mode == ClassEmbedMode::OneHot ? class_count : class_embed_dim;
    }
    std::size_t input_dim() const {
        return latent_dim + time_embed_dim + class_embed_width();
    }
    void validate() const;
};

// Class label bound to its class count; construction rejects out-of-range ids.
class ConditionEmbedding {
public:
    ConditionEmbedding(std::size_t class_id, std::size_t class_count);

    std::size_t class_id() const { return class_id_; }
    std::size_t class_count() const { return class_count_; }

private:
    std::size_t class_id_;
    std::size_t class_count_;
};

std::vector<double> one_hot(std::size_t id, std::size_t width);

// Sinusoidal features of t/total; frequencies geometric in [1, total] so the
// embedding resolves both coarse and per-step time differences.
std::vector<double> sinusoidal_time_embedding(std::size_t t, std::size_t total,
                                              std::size_t width);

// Conditional noise predictor. Input is [z_t | time embed | class embed];
// the learned class table (when enabled) trains jointly with the MLP and is
// appended to the flat parameter vector after the MLP blocks.
struct DenoiserModel {
    DenoiserConfig config;
    Mlp mlp;
    std::vector<double> embed_table; // class_count x class_embed_dim, learned mode

    static DenoiserModel create(const DenoiserConfig& cfg, Rng& rng);

    std::size_t param_count() const;
    std::vector<double> flatten_params() const;
    void set_params(const std::vector<double>& flat);
};

struct DenoiserCache {
    MlpCache mlp;
    std::size_t class_id = 0;
};

// Predicted noise for (z_t, t, c); same shape as z_t, pure in its inputs.
DenseArray denoiser_forward(const DenoiserModel& model, const DenseArray& z_t, std::size_t t,
                            const ConditionEmbedding& c, DenoiserCache* cache = nullptr);

// Accumulates (+=) analytic parameter gradients into param_grads
// (param_count-sized) and, when z_grad is non-null, writes dL/dz_t there.
void denoiser_backward(const DenoiserModel& model, const DenoiserCache& cache,
                       const DenseArray& upstream_grad, std::vector<double>& param_grads,
                       DenseArray* z_grad);

// Convenience form: forward + backward in one call.
std::pair<std::vector<double>, DenseArray> denoiser_backward(const DenoiserModel& model,
                                                             const DenseArray& z_t, std::size_t t,
                                                             const ConditionEmbedding& c,
                                                             const DenseArray& upstream_grad);

} // namespace mmdd
