#include "moobench/solvers/training.hpp"

#include <cmath>
#include <stdexcept>

namespace moobench::solvers {

PreferenceRay uniform_ray(std::size_t task_count) {
  return PreferenceRay(task_count, 1.0 / static_cast<double>(task_count));
}

namespace detail {

void require_input_dim(const ad::NetworkSpec& spec, std::size_t features, const char* who) {
  if (spec.input_dim != features) {
    throw std::invalid_argument(std::string(who) + ": network expects " +
                                std::to_string(spec.input_dim) + " inputs, data has " +
                                std::to_string(features));
  }
}

}  // namespace detail

MultiHeadModel train_single_task(std::size_t task, const ad::NetworkSpec& spec,
                                 const problems::Split& train, const SolverConfig& config,
                                 const StepObserver& observer) {
  spec.validate();
  if (task >= spec.task_count) throw std::invalid_argument("train_single_task: task out of range");
  detail::require_input_dim(spec, train.feature_dim, "train_single_task");

  MultiHeadModel model{spec, ad::init_parameters(spec, derive_seed(config.seed, streams::init))};
  ad::OptimizerState state;
  std::size_t steps = 0;
  detail::run_epochs(train, config, [&](const ad::Batch& batch, double lr) {
    ad::Tape tape;
    const auto vars = ad::bind(tape, model.params);
    const auto logits = ad::forward(spec, vars, tape.constant(batch.inputs));
    const ad::Var loss = ad::softmax_cross_entropy(logits[task], batch.labels[task]);
    if (!std::isfinite(loss.value().item())) {
      throw ad::DivergenceError("single task loss diverged", batch.index);
    }
    tape.backward(loss);
    const ad::ParameterSet grads = ad::gradients_of(vars);

    auto params = model.params.tensors();
    std::vector<const ad::Tensor*> active;
    for (const auto& t : grads.shared) active.push_back(&t);
    for (std::size_t j = 0; j < grads.per_task.size(); ++j)
      for (const auto& t : grads.per_task[j]) active.push_back(j == task ? &t : nullptr);
    ad::adam_step(params, active, state, lr, config.weight_decay);
    if (observer) observer(++steps, model.params);
  });
  return model;
}

MultiHeadModel train_scalarized(const PreferenceRay& ray, const ad::NetworkSpec& spec,
                                const problems::Split& train, const SolverConfig& config,
                                const StepObserver& observer) {
  spec.validate();
  validate_ray(ray);
  if (ray.size() != spec.task_count) throw std::invalid_argument("train_scalarized: ray size mismatch");
  detail::require_input_dim(spec, train.feature_dim, "train_scalarized");

  MultiHeadModel model{spec, ad::init_parameters(spec, derive_seed(config.seed, streams::init))};
  ad::OptimizerState state;
  std::size_t steps = 0;
  detail::run_epochs(train, config, [&](const ad::Batch& batch, double lr) {
    const auto lg = ad::loss_and_grads(spec, model.params, batch, ad::Scalarized{ray});
    ad::adam_step(model.params, lg.grads.front(), state, lr, config.weight_decay);
    if (observer) observer(++steps, model.params);
  });
  return model;
}

MultiHeadModel train_mgda(const ad::NetworkSpec& spec, const problems::Split& train,
                          const SolverConfig& config, const StepObserver& observer) {
  spec.validate();
  detail::require_input_dim(spec, train.feature_dim, "train_mgda");

  MultiHeadModel model{spec, ad::init_parameters(spec, derive_seed(config.seed, streams::init))};
  ad::OptimizerState state;
  std::size_t steps = 0;
  const std::size_t J = spec.task_count;
  detail::run_epochs(train, config, [&](const ad::Batch& batch, double lr) {
    const auto lg = ad::loss_and_grads(spec, model.params, batch, ad::PerTaskShared{});

    std::vector<std::vector<double>> shared(J);
    for (std::size_t j = 0; j < J; ++j) {
      for (const auto& t : lg.grads[j].shared)
        shared[j].insert(shared[j].end(), t.values().begin(), t.values().end());
    }
    const auto factors = normalization_factors(shared, config.norm_mode, lg.losses);
    const auto mn = min_norm_frank_wolfe(shared, config.norm_mode, lg.losses);

    ad::ParameterSet step_grads = ad::zeros_like(model.params);
    for (std::size_t j = 0; j < J; ++j) {
      const double coef = mn.weights[j] / factors[j];
      for (std::size_t i = 0; i < step_grads.shared.size(); ++i) {
        auto dst = step_grads.shared[i].values();
        const auto src = lg.grads[j].shared[i].values();
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += coef * src[k];
      }
      step_grads.per_task[j] = lg.grads[j].per_task[j];
    }
    ad::adam_step(model.params, step_grads, state, lr, config.weight_decay);
    if (observer) observer(++steps, model.params);
  });
  return model;
}

}  // namespace moobench::solvers
