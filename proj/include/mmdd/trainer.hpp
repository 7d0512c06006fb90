#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mmdd/adam.hpp"
#include "mmdd/codec.hpp"
#include "mmdd/denoiser.hpp"
#include "mmdd/feature_buffer.hpp"
#include "mmdd/minmax.hpp"
#include "mmdd/rng.hpp"
#include "mmdd/schedule.hpp"

namespace mmdd {

// Labeled vector set; the common currency between synthesis, training,
// generation and evaluation.
struct LabeledSet {
    std::size_t dim = 0;
    std::size_t class_count = 0;
    std::vector<std::vector<double>> samples;
    std::vector<std::size_t> labels;

    std::size_t size() const { return samples.size(); }
    void validate() const;
};

struct TrainConfig {
    std::size_t epochs = 8;
    std::size_t batch_size = 8;
    AdamConfig adam;
    double lambda_r = 1e-3;
    double lambda_d = 2e-3;
    std::size_t buffer_capacity = 64; // N_M and N_D
    BufferScope buffer_scope = BufferScope::PerClass;
    std::size_t warmup_steps = 0;     // steps before the min-max terms engage
    double grad_clip_norm = 10.0;     // 0 disables clipping
    std::size_t checkpoint_every = 0; // 0: final checkpoint only
    std::uint64_t seed = 0;

    void validate() const;
};

// One optimization step over a batch of (sample, class) pairs. Buffers seen
// by the loss hold only features from earlier steps; this step's z0 and
// detached zhat are pushed after the parameter update, tagged step_index.
LossBreakdown train_step(DenoiserModel& model, const NoiseSchedule& schedule,
                         const LatentCodec& codec, FeatureBuffer& real_buffer,
                         FeatureBuffer& synth_buffer,
                         const std::vector<std::vector<double>>& batch_x,
                         const std::vector<std::size_t>& batch_c, AdamState& opt_state,
                         const TrainConfig& config, Rng& rng, std::uint64_t step_index);

using CheckpointSink = std::function<void(const DenoiserModel&, std::size_t step)>;

// Full loop: epochs x ceil(N / batch) steps over per-epoch stratified
// shuffles (classes interleaved so every batch mixes classes). Returns the
// per-step loss history. checkpoint_sink, when set, fires every
// config.checkpoint_every steps and once at the end.
std::vector<LossBreakdown> train(DenoiserModel& model, const LabeledSet& dataset,
                                 const LatentCodec& codec, const NoiseSchedule& schedule,
                                 const TrainConfig& config,
                                 const CheckpointSink& checkpoint_sink = nullptr);

} // namespace mmdd
