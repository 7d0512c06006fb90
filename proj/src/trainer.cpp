#include "mmdd/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmdd/errors.hpp"

namespace mmdd {

void LabeledSet::validate() const {
    if (dim == 0) throw InvalidArgument("LabeledSet: dim must be >= 1");
    if (class_count == 0) throw InvalidArgument("LabeledSet: class_count must be >= 1");
    if (samples.size() != labels.size()) {
        throw InvalidArgument("LabeledSet: samples/labels length mismatch");
    }
    for (const auto& s : samples) {
        if (s.size() != dim) throw InvalidArgument("LabeledSet: sample dim mismatch");
    }
    for (std::size_t y : labels) {
        if (y >= class_count) throw InvalidArgument("LabeledSet: label out of range");
    }
}

void TrainConfig::validate() const {
    if (batch_size == 0) throw ConfigError("train: batch size must be >= 1");
    if (!(adam.lr > 0.0)) throw ConfigError("train: learning rate must be positive");
    if (lambda_r < 0.0 || lambda_d < 0.0) throw ConfigError("train: lambdas must be >= 0");
    if (grad_clip_norm < 0.0) throw ConfigError("train: grad_clip_norm must be >= 0");
}

LossBreakdown train_step(DenoiserModel& model, const NoiseSchedule& schedule,
                         const LatentCodec& codec, FeatureBuffer& real_buffer,
                         FeatureBuffer& synth_buffer,
                         const std::vector<std::vector<double>>& batch_x,
                         const std::vector<std::size_t>& batch_c, AdamState& opt_state,
                         const TrainConfig& config, Rng& rng, std::uint64_t step_index) {
    const std::size_t batch = batch_x.size();
    if (batch == 0) throw InvalidArgument("train_step: empty batch");
    if (batch_c.size() != batch) throw InvalidArgument("train_step: batch label size mismatch");

    const std::size_t latent_dim = model.config.latent_dim;
    const std::size_t class_count = model.config.class_count;

    std::vector<DenseArray> z0(batch), eps(batch), eps_hat(batch), zhat(batch);
    std::vector<std::size_t> ts(batch);
    std::vector<DenoiserCache> caches(batch);

    for (std::size_t i = 0; i < batch; ++i) {
        z0[i] = codec.encode(DenseArray::vector(batch_x[i]));
        ts[i] = rng.uniform_index(schedule.total_steps);
        eps[i] = DenseArray::vector(rng.normal_vec(latent_dim));
        const DenseArray z_t = forward_noise(schedule, z0[i], ts[i], eps[i]);
        const ConditionEmbedding cond(batch_c[i], class_count);
        eps_hat[i] = denoiser_forward(model, z_t, ts[i], cond, &caches[i]);
        zhat[i] = z_t;
        for (std::size_t k = 0; k < latent_dim; ++k) zhat[i].data[k] -= eps_hat[i].data[k];
    }

    const bool warm = step_index < config.warmup_steps;
    const double lr_w = warm ? 0.0 : config.lambda_r;
    const double ld_w = warm ? 0.0 : config.lambda_d;

    std::vector<std::vector<double>> eps_hat_grads;
    LossBreakdown breakdown = combined_loss(eps, eps_hat, zhat, batch_c, real_buffer,
                                            synth_buffer, lr_w, ld_w, &eps_hat_grads);
    if (!std::isfinite(breakdown.l_total)) {
        throw NumericError("train_step: non-finite loss (l_diff=" + std::to_string(breakdown.l_diff) +
                               ", l_r=" + std::to_string(breakdown.l_r) + ", l_d=" +
                               std::to_string(breakdown.l_d) + ")",
                           static_cast<std::size_t>(step_index));
    }

    std::vector<double> grads(model.param_count(), 0.0);
    for (std::size_t i = 0; i < batch; ++i) {
        denoiser_backward(model, caches[i], DenseArray::vector(eps_hat_grads[i]), grads, nullptr);
    }

    if (config.grad_clip_norm > 0.0) {
        const double norm = l2_norm(grads);
        if (norm > config.grad_clip_norm) {
            const double scale = config.grad_clip_norm / norm;
            for (auto& g : grads) g *= scale;
        }
    }

    std::vector<double> params = model.flatten_params();
    adam_step(params, grads, opt_state, config.adam);
    model.set_params(params);

    // Adjacent-batch semantics: this batch enters the buffers only after the
    // update, so the loss above never saw features from its own batch.
    for (std::size_t i = 0; i < batch; ++i) {
        real_buffer.push(z0[i], batch_c[i], step_index);
        synth_buffer.push(zhat[i], batch_c[i], step_index);
    }

    return breakdown;
}

namespace {

// Per-class shuffles interleaved round-robin so consecutive batches mix
// classes evenly while the overall order still varies per epoch.
std::vector<std::size_t> stratified_order(const LabeledSet& dataset, Rng& rng) {
    std::vector<std::vector<std::size_t>> per_class(dataset.class_count);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        per_class[dataset.labels[i]].push_back(i);
    }
    for (auto& lst : per_class) rng.shuffle(lst);

    std::vector<std::size_t> order;
    order.reserve(dataset.size());
    std::size_t depth = 0;
    for (const auto& lst : per_class) depth = std::max(depth, lst.size());
    for (std::size_t p = 0; p < depth; ++p) {
        for (const auto& lst : per_class) {
            if (p < lst.size()) order.push_back(lst[p]);
        }
    }
    return order;
}

} // namespace

std::vector<LossBreakdown> train(DenoiserModel& model, const LabeledSet& dataset,
                                 const LatentCodec& codec, const NoiseSchedule& schedule,
                                 const TrainConfig& config, const CheckpointSink& checkpoint_sink) {
    dataset.validate();
    config.validate();
    if (dataset.size() == 0) throw DegenerateData("train: empty dataset");

    const std::size_t classes = model.config.class_count;
    const std::size_t latent = model.config.latent_dim;
    FeatureBuffer real_buffer(BufferKind::Real, classes, latent, config.buffer_capacity,
                              config.buffer_scope);
    FeatureBuffer synth_buffer(BufferKind::Synthesized, classes, latent, config.buffer_capacity,
                               config.buffer_scope);

    AdamState opt_state(model.param_count());
    Rng step_rng(derive_seed(config.seed, 0x7261u)); // timestep + noise draws

    const std::size_t steps_per_epoch =
        (dataset.size() + config.batch_size - 1) / config.batch_size;
    std::vector<LossBreakdown> history;
    history.reserve(config.epochs * steps_per_epoch);

    std::uint64_t step_index = 0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        Rng shuffle_rng(derive_seed(config.seed, 0x9000u + epoch));
        const auto order = stratified_order(dataset, shuffle_rng);
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t stop = std::min(order.size(), start + config.batch_size);
            std::vector<std::vector<double>> bx;
            std::vector<std::size_t> bc;
            bx.reserve(stop - start);
            bc.reserve(stop - start);
            for (std::size_t p = start; p < stop; ++p) {
                bx.push_back(dataset.samples[order[p]]);
                bc.push_back(dataset.labels[order[p]]);
            }
            history.push_back(train_step(model, schedule, codec, real_buffer, synth_buffer, bx,
                                         bc, opt_state, config, step_rng, step_index));
            ++step_index;
            if (checkpoint_sink && config.checkpoint_every > 0 &&
                step_index % config.checkpoint_every == 0) {
                checkpoint_sink(model, step_index);
            }
        }
    }
    if (checkpoint_sink) checkpoint_sink(model, step_index);
    return history;
}

} // namespace mmdd
