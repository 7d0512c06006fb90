#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "mmdd/codec.hpp"
#include "mmdd/denoiser.hpp"
#include "mmdd/rng.hpp"
#include "mmdd/schedule.hpp"
#include "mmdd/trainer.hpp"

namespace mmdd {

enum class ClockMode { Real, Simulated };

// Wall-clock budget for surrogate generation. The simulated clock charges a
// fixed cost per batch, which makes budget arithmetic exactly reproducible.
struct GenBudget {
    double budget_secs = 600.0;
    ClockMode clock = ClockMode::Simulated;
    double sim_batch_cost = 5.0; // seconds per batch, simulated clock only
    std::size_t batch_size = 8;
    std::size_t steps = 10; // reverse-diffusion iterations per sample

    void validate() const;
};

struct GenMetadata {
    std::size_t steps = 0;
    double elapsed_secs = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> per_class_counts;
    bool budget_exhausted = false; // budget too small for even one batch
    std::size_t batches = 0;
    double mean_batch_secs = 0.0;
};

struct SurrogateDataset {
    LabeledSet set;
    GenMetadata meta;
};

// Budgeted batch generation: classes assigned round-robin from class 0, a
// predictive stop rule (elapsed + mean batch estimate must fit the budget),
// latents decoded through the codec.
SurrogateDataset generate(const DenoiserModel& model, const NoiseSchedule& schedule,
                          const LatentCodec& codec, const GenBudget& budget,
                          std::size_t class_count, std::uint64_t seed);

struct IpcValue {
    std::uint64_t value = 0; // floor(samples / classes), the reported integer
    std::uint64_t samples = 0;
    std::uint64_t classes = 0;
    double exact = 0.0;
};

IpcValue compute_ipc(std::uint64_t n_samples, std::uint64_t n_classes);

struct SweepRow {
    std::size_t steps = 0;
    double batch_secs = 0.0;
    std::size_t samples = 0;
    double accuracy = 0.0;
    double gain = 0.0;
};

using EvalHook = std::function<double(const SurrogateDataset&)>;

// One generation + evaluation per step count, each under the same budget;
// with the simulated clock the per-batch cost is sim_cost_per_step * S.
std::vector<SweepRow> sweep_steps(const DenoiserModel& model, const NoiseSchedule& schedule,
                                  const LatentCodec& codec, const GenBudget& base_budget,
                                  const std::vector<std::size_t>& step_list,
                                  double sim_cost_per_step, std::size_t class_count,
                                  const EvalHook& eval_hook, std::uint64_t seed);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

} // namespace mmdd
