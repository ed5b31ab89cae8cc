#include "moobench/ad/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace moobench::ad {

void adam_step(std::span<Tensor* const> params, std::span<const Tensor* const> grads,
               OptimizerState& state, double lr, double weight_decay, AdamConfig config) {
  if (params.size() != grads.size()) {
    throw std::invalid_argument("adam_step: parameter and gradient counts differ");
  }
  if (state.first_moment.empty()) {
    for (const Tensor* p : params) {
      state.first_moment.emplace_back(p->shape());
      state.second_moment.emplace_back(p->shape());
    }
  }
  if (state.first_moment.size() != params.size()) {
    throw std::invalid_argument("adam_step: optimizer state tracks a different parameter count");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (grads[i] == nullptr) continue;
    if (!grads[i]->same_shape(*params[i]) || !state.first_moment[i].same_shape(*params[i])) {
      throw std::invalid_argument("adam_step: shape mismatch for tensor " + std::to_string(i));
    }
    for (double g : grads[i]->values()) {
      if (!std::isfinite(g)) throw DivergenceError("non-finite gradient", state.step);
    }
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(config.beta1, t);
  const double bias2 = 1.0 - std::pow(config.beta2, t);

  for (std::size_t i = 0; i < params.size(); ++i) {
    if (grads[i] == nullptr) continue;
    auto p = params[i]->values();
    auto g = grads[i]->values();
    auto m = state.first_moment[i].values();
    auto v = state.second_moment[i].values();
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double gk = g[k] + weight_decay * p[k];
      m[k] = config.beta1 * m[k] + (1.0 - config.beta1) * gk;
      v[k] = config.beta2 * v[k] + (1.0 - config.beta2) * gk * gk;
      const double m_hat = m[k] / bias1;
      const double v_hat = v[k] / bias2;
      p[k] -= lr * m_hat / (std::sqrt(v_hat) + config.eps);
    }
  }
}

void adam_step(ParameterSet& params, const ParameterSet& grads, OptimizerState& state, double lr,
               double weight_decay, AdamConfig config) {
  const auto p = params.tensors();
  const auto g = grads.tensors();
  adam_step(p, g, state, lr, weight_decay, config);
}

}  // namespace moobench::ad
