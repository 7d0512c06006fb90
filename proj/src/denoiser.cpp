#include "mmdd/denoiser.hpp"

#include <cmath>
#include <string>

#include "mmdd/errors.hpp"

namespace mmdd {

void DenoiserConfig::validate() const {
    if (latent_dim == 0) throw ConfigError("denoiser: latent_dim must be >= 1");
    if (class_count == 0) throw ConfigError("denoiser: class_count must be >= 1");
    if (total_timesteps == 0) throw ConfigError("denoiser: total_timesteps must be >= 1");
    if (time_embed_dim == 0) throw ConfigError("denoiser: time_embed_dim must be >= 1");
    if (embed_mode == ClassEmbedMode::Learned && class_embed_dim == 0) {
        throw ConfigError("denoiser: class_embed_dim must be >= 1 in learned mode");
    }
}

ConditionEmbedding::ConditionEmbedding(std::size_t class_id, std::size_t class_count)
    : class_id_(class_id), class_count_(class_count) {
    if (class_count == 0) throw InvalidArgument("ConditionEmbedding: class_count must be >= 1");
    if (class_id >= class_count) {
        throw InvalidArgument("ConditionEmbedding: class id " + std::to_string(class_id) +
                              " out of range [0, " + std::to_string(class_count) + ")");
    }
}

std::vector<double> one_hot(std::size_t id, std::size_t width) {
    if (id >= width) {
        throw InvalidArgument("one_hot: index " + std::to_string(id) + " out of range [0, " +
                              std::to_string(width) + ")");
    }
    std::vector<double> v(width, 0.0);
    v[id] = 1.0;
    return v;
}

std::vector<double> sinusoidal_time_embedding(std::size_t t, std::size_t total,
                                              std::size_t width) {
    if (total == 0) throw InvalidArgument("time embedding: total must be >= 1");
    const double tn = static_cast<double>(t) / static_cast<double>(total);
    const std::size_t n_sin = (width + 1) / 2;
    const std::size_t n_cos = width - n_sin;
    std::vector<double> e(width);
    const double max_freq = static_cast<double>(total);
    for (std::size_t i = 0; i < n_sin; ++i) {
        const double frac = n_sin > 1 ? static_cast<double>(i) / static_cast<double>(n_sin - 1) : 0.0;
        const double freq = std::pow(max_freq, frac);
        e[i] = std::sin(tn * freq);
    }
    for (std::size_t i = 0; i < n_cos; ++i) {
        const double frac = n_cos > 1 ? static_cast<double>(i) / static_cast<double>(n_cos - 1) : 0.0;
        const double freq = std::pow(max_freq, frac);
        e[n_sin + i] = std::cos(tn * freq);
    }
    return e;
}

DenoiserModel DenoiserModel::create(const DenoiserConfig& cfg, Rng& rng) {
    cfg.validate();
    DenoiserModel m;
    m.config = cfg;
    std::vector<std::size_t> dims;
    dims.push_back(cfg.input_dim());
    for (std::size_t h : cfg.hidden) dims.push_back(h);
    dims.push_back(cfg.latent_dim);
    m.mlp = Mlp(std::move(dims), cfg.activation);
    m.mlp.init_params(rng, /*zero_final_layer=*/true);
    if (cfg.embed_mode == ClassEmbedMode::Learned) {
        m.embed_table.resize(cfg.class_count * cfg.class_embed_dim);
        const double bound = std::sqrt(6.0 / static_cast<double>(cfg.class_count + cfg.class_embed_dim));
        for (auto& v : m.embed_table) v = (2.0 * rng.uniform01() - 1.0) * bound;
    }
    return m;
}

std::size_t DenoiserModel::param_count() const {
    return mlp.param_count() + embed_table.size();
}

std::vector<double> DenoiserModel::flatten_params() const {
    std::vector<double> flat = mlp.flatten_params();
    flat.insert(flat.end(), embed_table.begin(), embed_table.end());
    return flat;
}

void DenoiserModel::set_params(const std::vector<double>& flat) {
    if (flat.size() != param_count()) {
        throw InvalidArgument("DenoiserModel::set_params: expected " +
                              std::to_string(param_count()) + " values, got " +
                              std::to_string(flat.size()));
    }
    std::vector<double> mlp_part(flat.begin(), flat.begin() + mlp.param_count());
    mlp.set_params(mlp_part);
    std::copy(flat.begin() + mlp.param_count(), flat.end(), embed_table.begin());
}

namespace {

std::vector<double> build_input(const DenoiserModel& model, const DenseArray& z_t, std::size_t t,
                                const ConditionEmbedding& c) {
    const auto& cfg = model.config;
    if (z_t.size() != cfg.latent_dim) {
        throw InvalidArgument("denoiser_forward: z_t dim " + std::to_string(z_t.size()) +
                              " != latent dim " + std::to_string(cfg.latent_dim));
    }
    if (t >= cfg.total_timesteps) {
        throw InvalidArgument("denoiser_forward: timestep " + std::to_string(t) +
                              " out of range [0, " + std::to_string(cfg.total_timesteps) + ")");
    }
    if (c.class_count() != cfg.class_count) {
        throw InvalidArgument("denoiser_forward: condition class count " +
                              std::to_string(c.class_count()) + " != model class count " +
                              std::to_string(cfg.class_count));
    }

    std::vector<double> in;
    in.reserve(cfg.input_dim());
    in.insert(in.end(), z_t.data.begin(), z_t.data.end());
    const auto te = sinusoidal_time_embedding(t, cfg.total_timesteps, cfg.time_embed_dim);
    in.insert(in.end(), te.begin(), te.end());
    if (cfg.embed_mode == ClassEmbedMode::OneHot) {
        const auto ce = one_hot(c.class_id(), cfg.class_count);
        in.insert(in.end(), ce.begin(), ce.end());
    } else {
        const double* row = model.embed_table.data() + c.class_id() * cfg.class_embed_dim;
        in.insert(in.end(), row, row + cfg.class_embed_dim);
    }
    return in;
}

} // namespace

DenseArray denoiser_forward(const DenoiserModel& model, const DenseArray& z_t, std::size_t t,
                            const ConditionEmbedding& c, DenoiserCache* cache) {
    const auto in = build_input(model, z_t, t, c);
    MlpCache local;
    MlpCache* mc = cache ? &cache->mlp : &local;
    auto out = model.mlp.forward(in, mc);
    if (cache) cache->class_id = c.class_id();
    DenseArray result = DenseArray::vector(std::move(out));
    require_finite(result, "denoiser_forward");
    return result;
}

void denoiser_backward(const DenoiserModel& model, const DenoiserCache& cache,
                       const DenseArray& upstream_grad, std::vector<double>& param_grads,
                       DenseArray* z_grad) {
    const auto& cfg = model.config;
    if (upstream_grad.size() != cfg.latent_dim) {
        throw InvalidArgument("denoiser_backward: upstream dim " +
                              std::to_string(upstream_grad.size()) + " != output dim " +
                              std::to_string(cfg.latent_dim));
    }
    if (param_grads.size() != model.param_count()) {
        throw InvalidArgument("denoiser_backward: gradient buffer size mismatch");
    }

    // param_grads layout: [mlp blocks | embed table]; slice off the MLP view.
    std::vector<double> mlp_grads(model.mlp.param_count(), 0.0);
    const auto d_input = model.mlp.backward(cache.mlp, upstream_grad.data, mlp_grads);
    for (std::size_t i = 0; i < mlp_grads.size(); ++i) param_grads[i] += mlp_grads[i];

    if (cfg.embed_mode == ClassEmbedMode::Learned) {
        const std::size_t base = model.mlp.param_count() + cache.class_id * cfg.class_embed_dim;
        const std::size_t embed_off = cfg.latent_dim + cfg.time_embed_dim;
        for (std::size_t i = 0; i < cfg.class_embed_dim; ++i) {
            param_grads[base + i] += d_input[embed_off + i];
        }
    }

    if (z_grad) {
        z_grad->shape = {cfg.latent_dim};
        z_grad->data.assign(d_input.begin(), d_input.begin() + cfg.latent_dim);
    }
}

std::pair<std::vector<double>, DenseArray> denoiser_backward(const DenoiserModel& model,
                                                             const DenseArray& z_t, std::size_t t,
                                                             const ConditionEmbedding& c,
                                                             const DenseArray& upstream_grad) {
    DenoiserCache cache;
    denoiser_forward(model, z_t, t, c, &cache);
    std::vector<double> grads(model.param_count(), 0.0);
    DenseArray z_grad;
    denoiser_backward(model, cache, upstream_grad, grads, &z_grad);
    return {std::move(grads), std::move(z_grad)};
}

} // namespace mmdd
