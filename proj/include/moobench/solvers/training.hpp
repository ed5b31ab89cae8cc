#pragma once

#include "moobench/ad/adam.hpp"
#include "moobench/ad/network.hpp"
#include "moobench/problems/glyphs.hpp"
#include "moobench/solvers/config.hpp"

namespace moobench::solvers {

/// A trained shared-trunk network.
struct MultiHeadModel {
  ad::NetworkSpec spec;
  ad::ParameterSet params;
};

PreferenceRay uniform_ray(std::size_t task_count);

/// Trains the whole network on L_task only. Heads of other tasks keep their
/// initialization (they receive no update and no weight decay).
MultiHeadModel train_single_task(std::size_t task, const ad::NetworkSpec& spec,
                                 const problems::Split& train, const SolverConfig& config,
                                 const StepObserver& observer = {});

/// Descends Σ ray_j L_j with Adam and the configured schedule.
MultiHeadModel train_scalarized(const PreferenceRay& ray, const ad::NetworkSpec& spec,
                                const problems::Split& train, const SolverConfig& config,
                                const StepObserver& observer = {});

/// MGDA: every step the shared parameters follow the min-norm element of the
/// normalized per-task shared gradients; each head follows its own task gradient.
MultiHeadModel train_mgda(const ad::NetworkSpec& spec, const problems::Split& train,
                          const SolverConfig& config, const StepObserver& observer = {});

namespace detail {

/// Shared epoch loop: per-epoch learning rate, per-epoch shuffles derived
/// from config.seed, and `step(batch, lr)` for every minibatch.
template <typename Step>
void run_epochs(const problems::Split& train, const SolverConfig& config, Step&& step) {
  if (config.epochs == 0) return;
  const auto schedule = ad::ScheduleSpec::for_run(config.schedule, config.lr, config.epochs);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const double lr = ad::lr_at(schedule, epoch);
    for (const auto& batch :
         problems::epoch_batches(train, config.batch_size, derive_seed(config.seed, streams::shuffle, epoch))) {
      step(batch, lr);
    }
  }
}

/// Checks the network's input width against the split's features.
void require_input_dim(const ad::NetworkSpec& spec, std::size_t features, const char* who);

}  // namespace detail

}  // namespace moobench::solvers
