#include "moobench/solvers/phn.hpp"

#include <cmath>
#include <stdexcept>

namespace moobench::solvers {
namespace {

ad::Tensor ray_row(const PreferenceRay& ray) { return ad::Tensor({1, ray.size()}, ray); }

// Generated flat parameters on the tape, split into target-shaped views.
ad::ParameterVars generated_vars(const HyperNetModel& model, const ad::ParameterVars& hyper_vars,
                                 ad::Tape& tape, const PreferenceRay& ray) {
  const ad::Var flat = ad::forward(model.hyper, hyper_vars, tape.constant(ray_row(ray))).front();
  const ad::ParameterSet layout = ad::zero_parameters(model.target);
  ad::ParameterVars out;
  std::size_t offset = 0;
  auto take = [&](const ad::Tensor& t) {
    ad::Var v = ad::slice(flat, offset, t.shape());
    offset += t.size();
    return v;
  };
  for (const auto& t : layout.shared) out.shared.push_back(take(t));
  for (const auto& head : layout.per_task) {
    out.per_task.emplace_back();
    for (const auto& t : head) out.per_task.back().push_back(take(t));
  }
  return out;
}

ad::Var scalarized_loss(const HyperNetModel& model, const ad::ParameterVars& hyper_vars,
                        ad::Tape& tape, const ad::Batch& batch, const PreferenceRay& ray) {
  const auto target_vars = generated_vars(model, hyper_vars, tape, ray);
  const auto losses = ad::task_losses(model.target, target_vars, tape.constant(batch.inputs), batch);
  return ad::weighted_sum(losses, ray);
}

}  // namespace

ad::NetworkSpec hypernet_spec(const ad::NetworkSpec& target, std::size_t hidden) {
  if (hidden == 0) throw std::invalid_argument("hypernet_spec: hidden width must be positive");
  ad::NetworkSpec h;
  h.input_dim = target.task_count;
  h.trunk_widths = {hidden};
  h.width_multiplier = 1.0;
  h.task_count = 1;
  h.classes_per_task = ad::param_count(target);
  return h;
}

HyperNetModel init_hypernet(const ad::NetworkSpec& target, std::size_t hidden, std::uint64_t seed) {
  target.validate();
  HyperNetModel m{target, hypernet_spec(target, hidden), {}};
  m.hyper_params = ad::init_parameters(m.hyper, seed);
  auto& out_layer = m.hyper_params.per_task.front();
  for (auto& v : out_layer[0].values()) v *= 1e-2;
  const auto base = ad::init_parameters(target, derive_seed(seed, streams::init, 1)).flatten();
  std::copy(base.begin(), base.end(), out_layer[1].values().begin());
  return m;
}

ad::ParameterSet phn_target_weights(const HyperNetModel& model, const PreferenceRay& ray) {
  validate_ray(ray);
  if (ray.size() != model.target.task_count) {
    throw std::invalid_argument("phn_target_weights: ray size mismatch");
  }
  const auto flat = ad::forward(model.hyper, model.hyper_params, ray_row(ray)).front();
  ad::ParameterSet out = ad::zero_parameters(model.target);
  out.assign_flat(flat.values());
  return out;
}

std::pair<double, ad::ParameterSet> phn_loss_and_grad(const HyperNetModel& model,
                                                      const ad::Batch& batch,
                                                      const PreferenceRay& ray) {
  ad::Tape tape;
  const auto vars = ad::bind(tape, model.hyper_params);
  const ad::Var loss = scalarized_loss(model, vars, tape, batch, ray);
  tape.backward(loss);
  return {loss.value().item(), ad::gradients_of(vars)};
}

HyperNetModel train_phn(const ad::NetworkSpec& spec, const problems::Split& train,
                        const SolverConfig& config, const StepObserver& observer) {
  spec.validate();
  detail::require_input_dim(spec, train.feature_dim, "train_phn");
  HyperNetModel model = init_hypernet(spec, config.phn_hidden, derive_seed(config.seed, streams::init));
  ad::OptimizerState state;
  std::mt19937_64 ray_rng(derive_seed(config.seed, streams::rays));
  std::size_t steps = 0;

  detail::run_epochs(train, config, [&](const ad::Batch& batch, double lr) {
    const PreferenceRay ray = sample_preference(config.alpha, spec.task_count, ray_rng);
    auto [loss, grads] = phn_loss_and_grad(model, batch, ray);
    if (!std::isfinite(loss)) throw ad::DivergenceError("phn loss diverged", batch.index);
    ad::adam_step(model.hyper_params, grads, state, lr, config.weight_decay);
    if (observer) observer(++steps, model.hyper_params);
  });
  return model;
}

}  // namespace moobench::solvers
