#include "mmdd/generator.hpp"

#include <chrono>
#include <ostream>
#include <string>

#include "mmdd/errors.hpp"
#include "mmdd/evaluator.hpp"
#include "mmdd/fmt_util.hpp"
#include "mmdd/sampler.hpp"

namespace mmdd {

void GenBudget::validate() const {
    if (budget_secs < 0.0) throw ConfigError("generate: budget must be >= 0");
    if (steps == 0) throw ConfigError("generate: steps must be >= 1");
    if (batch_size == 0) throw ConfigError("generate: batch size must be >= 1");
    if (clock == ClockMode::Simulated && !(sim_batch_cost > 0.0)) {
        throw ConfigError("generate: simulated batch cost must be positive");
    }
}

SurrogateDataset generate(const DenoiserModel& model, const NoiseSchedule& schedule,
                          const LatentCodec& codec, const GenBudget& budget,
                          std::size_t class_count, std::uint64_t seed) {
    budget.validate();
    if (class_count == 0) throw InvalidArgument("generate: class count must be >= 1");
    if (class_count != model.config.class_count) {
        throw InvalidArgument("generate: class count " + std::to_string(class_count) +
                              " != model class count " + std::to_string(model.config.class_count));
    }

    const StepPlan plan = make_step_plan(schedule.total_steps, budget.steps);
    Rng rng(derive_seed(seed, 0x6E0000u));

    SurrogateDataset out;
    out.set.dim = codec.input_dim();
    out.set.class_count = class_count;
    out.meta.steps = budget.steps;
    out.meta.seed = seed;
    out.meta.per_class_counts.assign(class_count, 0);

    const auto start = std::chrono::steady_clock::now();
    double elapsed = 0.0;
    std::size_t batches = 0;
    std::size_t sample_counter = 0;

    while (true) {
        // Predictive stop: never start a batch the running estimate says
        // cannot finish inside the budget.
        double estimate;
        if (budget.clock == ClockMode::Simulated) {
            estimate = budget.sim_batch_cost;
        } else {
            estimate = batches > 0 ? elapsed / static_cast<double>(batches) : 0.0;
        }
        if (budget.budget_secs <= 0.0 || elapsed + estimate > budget.budget_secs) break;

        for (std::size_t j = 0; j < budget.batch_size; ++j) {
            const std::size_t class_id = sample_counter % class_count;
            const ConditionEmbedding cond(class_id, class_count);
            const DenseArray z0 = reverse_sample(schedule, model, plan, cond, rng);
            const DenseArray x = codec.decode(z0);
            out.set.samples.push_back(x.data);
            out.set.labels.push_back(class_id);
            out.meta.per_class_counts[class_id] += 1;
            ++sample_counter;
        }
        ++batches;

        if (budget.clock == ClockMode::Simulated) {
            elapsed += budget.sim_batch_cost;
        } else {
            elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        }
    }

    out.meta.elapsed_secs = elapsed;
    out.meta.batches = batches;
    out.meta.mean_batch_secs = batches > 0 ? elapsed / static_cast<double>(batches) : 0.0;
    out.meta.budget_exhausted = batches == 0;
    return out;
}

IpcValue compute_ipc(std::uint64_t n_samples, std::uint64_t n_classes) {
    if (n_classes == 0) throw InvalidArgument("compute_ipc: class count must be >= 1");
    IpcValue v;
    v.samples = n_samples;
    v.classes = n_classes;
    v.value = n_samples / n_classes;
    v.exact = static_cast<double>(n_samples) / static_cast<double>(n_classes);
    return v;
}

std::vector<SweepRow> sweep_steps(const DenoiserModel& model, const NoiseSchedule& schedule,
                                  const LatentCodec& codec, const GenBudget& base_budget,
                                  const std::vector<std::size_t>& step_list,
                                  double sim_cost_per_step, std::size_t class_count,
                                  const EvalHook& eval_hook, std::uint64_t seed) {
    if (step_list.empty()) throw InvalidArgument("sweep_steps: empty step list");
    if (base_budget.clock == ClockMode::Simulated && !(sim_cost_per_step > 0.0)) {
        throw ConfigError("sweep_steps: simulated cost per step must be positive");
    }

    std::vector<SweepRow> rows;
    rows.reserve(step_list.size());
    for (std::size_t s : step_list) {
        GenBudget budget = base_budget;
        budget.steps = s;
        if (budget.clock == ClockMode::Simulated) {
            budget.sim_batch_cost = sim_cost_per_step * static_cast<double>(s);
        }
        const SurrogateDataset surrogate =
            generate(model, schedule, codec, budget, class_count, derive_seed(seed, s));

        SweepRow row;
        row.steps = s;
        row.batch_secs = surrogate.meta.mean_batch_secs;
        row.samples = surrogate.set.size();
        row.accuracy = row.samples > 0 && eval_hook ? eval_hook(surrogate) : 0.0;
        row.gain = row.samples > 0 ? accuracy_gain_for_sweep(row.accuracy, row.samples) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "steps,batchtime_s,samples,accuracy,acc_gain\n";
    for (const auto& r : rows) {
        out << r.steps << ',' << fmt_double(r.batch_secs) << ',' << r.samples << ','
            << fmt_double(r.accuracy) << ',' << fmt_double(r.gain) << '\n';
    }
}

} // namespace mmdd
