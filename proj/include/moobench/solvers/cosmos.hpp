#pragma once

#include <optional>

#include "moobench/solvers/training.hpp"

namespace moobench::solvers {

/// Preference-conditioned network: the ray is appended to every input row,
/// so `net.spec.input_dim` is the data width plus the task count.
struct CosmosModel {
  MultiHeadModel net;
};

/// Network spec with J extra input slots for the ray.
ad::NetworkSpec cosmos_spec(const ad::NetworkSpec& base);

/// Appends `ray` to every row of `inputs`.
ad::Tensor append_ray(const ad::Tensor& inputs, std::span<const double> ray);

/// Each step draws a ray from Dirichlet(alpha), conditions the inputs on it
/// and minimizes cosmos_loss(losses, ray, lambda). `spec` is the
/// unconditioned base architecture. A `fixed_ray` replaces sampling.
CosmosModel train_cosmos(const ad::NetworkSpec& spec, const problems::Split& train,
                         const SolverConfig& config, const StepObserver& observer = {},
                         const std::optional<PreferenceRay>& fixed_ray = std::nullopt);

}  // namespace moobench::solvers
