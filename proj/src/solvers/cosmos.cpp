#include "moobench/solvers/cosmos.hpp"

#include <cmath>
#include <stdexcept>

namespace moobench::solvers {

ad::NetworkSpec cosmos_spec(const ad::NetworkSpec& base) {
  ad::NetworkSpec s = base;
  s.input_dim += base.task_count;
  return s;
}

ad::Tensor append_ray(const ad::Tensor& inputs, std::span<const double> ray) {
  const std::size_t rows = inputs.rows(), cols = inputs.cols(), extra = ray.size();
  std::vector<double> values;
  values.reserve(rows * (cols + extra));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = inputs.values().subspan(r * cols, cols);
    values.insert(values.end(), row.begin(), row.end());
    values.insert(values.end(), ray.begin(), ray.end());
  }
  return ad::Tensor({rows, cols + extra}, std::move(values));
}

CosmosModel train_cosmos(const ad::NetworkSpec& spec, const problems::Split& train,
                         const SolverConfig& config, const StepObserver& observer,
                         const std::optional<PreferenceRay>& fixed_ray) {
  spec.validate();
  detail::require_input_dim(spec, train.feature_dim, "train_cosmos");
  if (fixed_ray) validate_ray(*fixed_ray);

  const ad::NetworkSpec conditioned = cosmos_spec(spec);
  CosmosModel model{{conditioned, ad::init_parameters(conditioned, derive_seed(config.seed, streams::init))}};
  ad::OptimizerState state;
  std::mt19937_64 ray_rng(derive_seed(config.seed, streams::rays));
  std::size_t steps = 0;

  detail::run_epochs(train, config, [&](const ad::Batch& batch, double lr) {
    const PreferenceRay ray =
        fixed_ray ? *fixed_ray : sample_preference(config.alpha, spec.task_count, ray_rng);
    ad::Tape tape;
    const auto vars = ad::bind(tape, model.net.params);
    const auto inputs = tape.constant(append_ray(batch.inputs, ray));
    const auto losses = ad::task_losses(conditioned, vars, inputs, batch);
    const ad::Var total = cosmos_loss(losses, ray, config.lambda);
    if (!std::isfinite(total.value().item())) throw ad::DivergenceError("cosmos loss diverged", batch.index);
    tape.backward(total);
    ad::adam_step(model.net.params, ad::gradients_of(vars), state, lr, config.weight_decay);
    if (observer) observer(++steps, model.net.params);
  });
  return model;
}

}  // namespace moobench::solvers
