#include "moobench/ad/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moobench::ad {

double finite_diff_check(const std::function<double(std::span<const double>)>& f,
                         std::span<const double> analytic, std::span<const double> x, double eps) {
  if (!(eps > 0.0 && eps <= 1e-2)) throw std::invalid_argument("finite_diff_check: eps outside (0, 1e-2]");
  if (analytic.size() != x.size()) throw std::invalid_argument("finite_diff_check: size mismatch");
  std::vector<double> probe(x.begin(), x.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double saved = probe[i];
    probe[i] = saved + eps;
    const double up = f(probe);
    probe[i] = saved - eps;
    const double down = f(probe);
    probe[i] = saved;
    const double numeric = (up - down) / (2.0 * eps);
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-8});
    worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
  }
  return worst;
}

double finite_diff_check(const NetworkSpec& spec, const ParameterSet& params, const Batch& batch,
                         double eps) {
  const std::vector<double> weights(spec.task_count, 1.0 / static_cast<double>(spec.task_count));
  const auto analytic = loss_and_grads(spec, params, batch, Scalarized{weights});
  const auto x = params.flatten();
  ParameterSet scratch = params;
  auto objective = [&](std::span<const double> flat) {
    scratch.assign_flat(flat);
    const auto logits = forward(spec, scratch, batch.inputs);
    Tape tape;
    std::vector<Var> losses;
    for (std::size_t j = 0; j < logits.size(); ++j) {
      losses.push_back(softmax_cross_entropy(tape.constant(logits[j]), batch.labels[j]));
    }
    return weighted_sum(losses, weights).value().item();
  };
  return finite_diff_check(objective, analytic.grads.front().flatten(), x, eps);
}

}  // namespace moobench::ad
