#pragma once

#include "moobench/solvers/training.hpp"

namespace moobench::solvers {

/// Toy Pareto hypernetwork: a one-hidden-layer ReLU MLP mapping a ray to the
/// flattened parameters of `target`. Stored as a single-task network whose
/// `classes_per_task` is the target parameter count.
struct HyperNetModel {
  ad::NetworkSpec target;
  ad::NetworkSpec hyper;
  ad::ParameterSet hyper_params;
};

ad::NetworkSpec hypernet_spec(const ad::NetworkSpec& target, std::size_t hidden);

/// Starts from a generated set close to a regular target initialization:
/// the output bias holds init_parameters(target) and the output weights are scaled by 1e-2.
HyperNetModel init_hypernet(const ad::NetworkSpec& target, std::size_t hidden, std::uint64_t seed);

ad::ParameterSet phn_target_weights(const HyperNetModel& model, const PreferenceRay& ray);

/// Σ ray_j L_j on `batch` through the generated weights, and its gradient
/// with respect to the hypernetwork parameters.
std::pair<double, ad::ParameterSet> phn_loss_and_grad(const HyperNetModel& model,
                                                      const ad::Batch& batch,
                                                      const PreferenceRay& ray);

/// Linear-scalarization training: one Dirichlet(alpha) ray per step.
HyperNetModel train_phn(const ad::NetworkSpec& spec, const problems::Split& train,
                        const SolverConfig& config, const StepObserver& observer = {});

}  // namespace moobench::solvers
