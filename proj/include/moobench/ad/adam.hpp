#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moobench/ad/network.hpp"
#include "moobench/ad/tensor.hpp"

namespace moobench::ad {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// First and second moments for each parameter tensor plus the shared step counter.
struct OptimizerState {
  std::vector<Tensor> first_moment;
  std::vector<Tensor> second_moment;
  std::size_t step = 0;
};

/// One Adam update with coupled L2 weight decay (decay * param is added to the
/// gradient before the moments are updated).
///
/// A null gradient freezes that tensor for this step: its parameters,
/// moments and decay are left untouched. Throws DivergenceError on a
/// non-finite gradient.
void adam_step(std::span<Tensor* const> params, std::span<const Tensor* const> grads,
               OptimizerState& state, double lr, double weight_decay, AdamConfig config = {});

/// Convenience overload over matching ParameterSets.
void adam_step(ParameterSet& params, const ParameterSet& grads, OptimizerState& state, double lr,
               double weight_decay, AdamConfig config = {});

}  // namespace moobench::ad
