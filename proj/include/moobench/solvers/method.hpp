#pragma once

#include <variant>

#include "moobench/solvers/evaluate.hpp"

namespace moobench::solvers {

using TrainedMethod =
    std::variant<MultiHeadModel, SingleTaskModels, CosmosModel, HyperNetModel, PmtlModels>;

/// Dispatches on config.method. single_task trains only config.task; use
/// train_single_task_all for the combined per-task baseline.
TrainedMethod train_method(const SolverConfig& config, const ad::NetworkSpec& spec,
                           const problems::Split& train, const StepObserver& observer = {});

SingleTaskModels train_single_task_all(const ad::NetworkSpec& spec, const problems::Split& train,
                                       const SolverConfig& config);

/// `rays` only matters for preference-conditioned models (empty = default rays).
std::vector<EvalPoint> evaluate_method(const TrainedMethod& method, const problems::Split& split,
                                       std::span<const PreferenceRay> rays = {});

}  // namespace moobench::solvers
