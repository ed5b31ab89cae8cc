#include "moobench/ad/network.hpp"

#include <cmath>
#include <random>

namespace moobench::ad {
namespace {

struct LayerShape {
  std::size_t in;
  std::size_t out;
};

std::vector<LayerShape> trunk_layers(const NetworkSpec& spec) {
  std::vector<LayerShape> layers;
  std::size_t in = spec.input_dim;
  for (std::size_t w : spec.realized_trunk_widths()) {
    layers.push_back({in, w});
    in = w;
  }
  return layers;
}

std::vector<LayerShape> head_layers(const NetworkSpec& spec) {
  std::vector<LayerShape> layers;
  std::size_t in = spec.trunk_output_dim();
  for (std::size_t w : spec.head_widths) {
    layers.push_back({in, w});
    in = w;
  }
  layers.push_back({in, spec.classes_per_task});
  return layers;
}

void append_layer(std::vector<Tensor>& block, LayerShape l, std::mt19937_64* rng) {
  Tensor w({l.in, l.out});
  Tensor b({l.out});
  if (rng != nullptr) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(l.in));
    std::uniform_real_distribution<double> u(-bound, bound);
    for (auto& v : w.values()) v = u(*rng);
    for (auto& v : b.values()) v = u(*rng);
  }
  block.push_back(std::move(w));
  block.push_back(std::move(b));
}

ParameterSet make_parameters(const NetworkSpec& spec, std::mt19937_64* rng) {
  spec.validate();
  ParameterSet p;
  for (auto l : trunk_layers(spec)) append_layer(p.shared, l, rng);
  p.per_task.resize(spec.task_count);
  for (auto& head : p.per_task) {
    for (auto l : head_layers(spec)) append_layer(head, l, rng);
  }
  return p;
}

Var dense_stack(std::span<const Var> layer_params, Var x, bool relu_last) {
  const std::size_t layers = layer_params.size() / 2;
  for (std::size_t i = 0; i < layers; ++i) {
    x = add_bias(matmul(x, layer_params[2 * i]), layer_params[2 * i + 1]);
    if (i + 1 < layers || relu_last) x = relu(x);
  }
  return x;
}

}  // namespace

std::size_t realized_width(std::size_t base, double multiplier) {
  const double scaled = std::floor(static_cast<double>(base) * multiplier + 0.5);
  return scaled < 1.0 ? 1 : static_cast<std::size_t>(scaled);
}

void NetworkSpec::validate() const {
  if (input_dim == 0) throw std::invalid_argument("NetworkSpec: input_dim must be positive");
  if (!(width_multiplier > 0.0) || !std::isfinite(width_multiplier)) {
    throw std::invalid_argument("NetworkSpec: width multiplier must be positive");
  }
  if (task_count == 0) throw std::invalid_argument("NetworkSpec: task_count must be positive");
  if (classes_per_task == 0) throw std::invalid_argument("NetworkSpec: classes_per_task must be positive");
  for (auto w : trunk_widths)
    if (w == 0) throw std::invalid_argument("NetworkSpec: zero trunk width");
  for (auto w : head_widths)
    if (w == 0) throw std::invalid_argument("NetworkSpec: zero head width");
}

std::vector<std::size_t> NetworkSpec::realized_trunk_widths() const {
  std::vector<std::size_t> widths;
  for (auto w : trunk_widths) widths.push_back(realized_width(w, width_multiplier));
  return widths;
}

std::size_t NetworkSpec::trunk_output_dim() const {
  return trunk_widths.empty() ? input_dim : realized_width(trunk_widths.back(), width_multiplier);
}

std::vector<Tensor*> ParameterSet::tensors() {
  std::vector<Tensor*> out;
  for (auto& t : shared) out.push_back(&t);
  for (auto& head : per_task)
    for (auto& t : head) out.push_back(&t);
  return out;
}

std::vector<const Tensor*> ParameterSet::tensors() const {
  std::vector<const Tensor*> out;
  for (const auto& t : shared) out.push_back(&t);
  for (const auto& head : per_task)
    for (const auto& t : head) out.push_back(&t);
  return out;
}

std::size_t ParameterSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto* t : tensors()) n += t->size();
  return n;
}

std::vector<double> ParameterSet::flatten() const {
  std::vector<double> flat;
  flat.reserve(scalar_count());
  for (const auto* t : tensors()) flat.insert(flat.end(), t->values().begin(), t->values().end());
  return flat;
}

void ParameterSet::assign_flat(std::span<const double> values) {
  if (values.size() != scalar_count()) {
    throw std::invalid_argument("assign_flat: expected " + std::to_string(scalar_count()) +
                                " values, got " + std::to_string(values.size()));
  }
  std::size_t offset = 0;
  for (auto* t : tensors()) {
    for (auto& v : t->values()) v = values[offset++];
  }
}

ParameterSet zeros_like(const ParameterSet& params) {
  ParameterSet z;
  for (const auto& t : params.shared) z.shared.emplace_back(t.shape());
  for (const auto& head : params.per_task) {
    auto& block = z.per_task.emplace_back();
    for (const auto& t : head) block.emplace_back(t.shape());
  }
  return z;
}

ParameterSet init_parameters(const NetworkSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return make_parameters(spec, &rng);
}

ParameterSet zero_parameters(const NetworkSpec& spec) { return make_parameters(spec, nullptr); }

std::size_t param_count(const NetworkSpec& spec) {
  spec.validate();
  std::size_t n = 0;
  for (auto l : trunk_layers(spec)) n += l.in * l.out + l.out;
  std::size_t head = 0;
  for (auto l : head_layers(spec)) head += l.in * l.out + l.out;
  return n + head * spec.task_count;
}

ParameterVars bind(Tape& tape, const ParameterSet& params) {
  ParameterVars vars;
  for (const auto& t : params.shared) vars.shared.push_back(tape.leaf(t));
  for (const auto& head : params.per_task) {
    auto& block = vars.per_task.emplace_back();
    for (const auto& t : head) block.push_back(tape.leaf(t));
  }
  return vars;
}

ParameterSet gradients_of(const ParameterVars& vars) {
  auto grad_or_zero = [](Var v) {
    const Tensor& g = v.grad();
    return g.size() == v.value().size() ? g : Tensor(v.value().shape());
  };
  ParameterSet g;
  for (auto v : vars.shared) g.shared.push_back(grad_or_zero(v));
  for (const auto& head : vars.per_task) {
    auto& block = g.per_task.emplace_back();
    for (auto v : head) block.push_back(grad_or_zero(v));
  }
  return g;
}

std::vector<Var> forward(const NetworkSpec& spec, const ParameterVars& params, Var inputs) {
  if (inputs.value().cols() != spec.input_dim) {
    throw std::invalid_argument("forward: input has " + std::to_string(inputs.value().cols()) +
                                " features, network expects " + std::to_string(spec.input_dim));
  }
  if (params.per_task.size() != spec.task_count) {
    throw std::invalid_argument("forward: parameter set has " +
                                std::to_string(params.per_task.size()) + " heads, spec has " +
                                std::to_string(spec.task_count));
  }
  const Var trunk = dense_stack(params.shared, inputs, true);
  std::vector<Var> logits;
  logits.reserve(spec.task_count);
  for (const auto& head : params.per_task) logits.push_back(dense_stack(head, trunk, false));
  return logits;
}

std::vector<Tensor> forward(const NetworkSpec& spec, const ParameterSet& params,
                            const Tensor& inputs) {
  Tape tape;
  const auto vars = bind(tape, params);
  std::vector<Tensor> out;
  for (Var v : forward(spec, vars, tape.constant(inputs))) out.push_back(v.value());
  return out;
}

std::vector<Var> task_losses(const NetworkSpec& spec, const ParameterVars& params, Var inputs,
                             const Batch& batch) {
  if (batch.labels.size() != spec.task_count) {
    throw std::invalid_argument("task_losses: batch carries " + std::to_string(batch.labels.size()) +
                                " label sets for " + std::to_string(spec.task_count) + " tasks");
  }
  const auto logits = forward(spec, params, inputs);
  std::vector<Var> losses;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    Var l = softmax_cross_entropy(logits[j], batch.labels[j]);
    if (!std::isfinite(l.value().item())) {
      throw DivergenceError("non-finite loss for task " + std::to_string(j), batch.index);
    }
    losses.push_back(l);
  }
  return losses;
}

LossGrads loss_and_grads(const NetworkSpec& spec, const ParameterSet& params, const Batch& batch,
                         const GradientMode& mode) {
  Tape tape;
  const auto vars = bind(tape, params);
  const auto losses = task_losses(spec, vars, tape.constant(batch.inputs), batch);
  LossGrads out;
  for (Var l : losses) out.losses.push_back(l.value().item());

  if (const auto* s = std::get_if<Scalarized>(&mode)) {
    if (s->weights.size() != losses.size()) {
      throw std::invalid_argument("loss_and_grads: " + std::to_string(s->weights.size()) +
                                  " weights for " + std::to_string(losses.size()) + " tasks");
    }
    tape.backward(weighted_sum(losses, s->weights));
    out.grads.push_back(gradients_of(vars));
  } else {
    for (Var l : losses) {
      tape.backward(l);
      out.grads.push_back(gradients_of(vars));
    }
  }
  return out;
}

}  // namespace moobench::ad
