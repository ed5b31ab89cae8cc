#include "moobench/solvers/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moobench::solvers {
namespace {

ad::Tensor split_inputs(const problems::Split& split) {
  if (split.size() == 0) throw std::invalid_argument("evaluate: empty split");
  return ad::Tensor({split.size(), split.feature_dim}, split.pixels);
}

std::vector<PreferenceRay> rays_or_default(std::span<const PreferenceRay> rays, std::size_t J) {
  if (!rays.empty()) return {rays.begin(), rays.end()};
  return evenly_spaced_rays(J, kDefaultEvalRays);
}

}  // namespace

EvalPoint score_logits(std::span<const ad::Tensor> logits, const problems::Split& split) {
  if (logits.size() != split.task_count()) throw std::invalid_argument("score_logits: task count mismatch");
  EvalPoint p;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    const auto& L = logits[j];
    const std::size_t n = L.rows(), k = L.cols();
    if (n != split.size()) throw std::invalid_argument("score_logits: row count mismatch");
    std::size_t wrong = 0;
    double ce = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const auto row = L.values().subspan(r * k, k);
      const auto best = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
      const int label = split.labels[j][r];
      if (best != static_cast<std::size_t>(label)) ++wrong;
      const double m = row[best];
      double s = 0.0;
      for (double v : row) s += std::exp(v - m);
      ce += m + std::log(s) - row[static_cast<std::size_t>(label)];
    }
    p.mcr.push_back(static_cast<double>(wrong) / static_cast<double>(n));
    p.ce.push_back(ce / static_cast<double>(n));
  }
  return p;
}

EvalPoint evaluate(const ad::NetworkSpec& spec, const ad::ParameterSet& params,
                   const problems::Split& split) {
  const auto logits = ad::forward(spec, params, split_inputs(split));
  return score_logits(logits, split);
}

EvalPoint evaluate(const MultiHeadModel& model, const problems::Split& split) {
  return evaluate(model.spec, model.params, split);
}

EvalPoint evaluate(const SingleTaskModels& models, const problems::Split& split) {
  if (models.models.size() != split.task_count()) {
    throw std::invalid_argument("evaluate: need one single-task model per task");
  }
  EvalPoint out;
  for (std::size_t j = 0; j < models.models.size(); ++j) {
    const EvalPoint p = evaluate(models.models[j], split);
    out.mcr.push_back(p.mcr[j]);
    out.ce.push_back(p.ce[j]);
  }
  return out;
}

std::vector<EvalPoint> evaluate(const CosmosModel& model, const problems::Split& split,
                                std::span<const PreferenceRay> rays) {
  const ad::Tensor inputs = split_inputs(split);
  std::vector<EvalPoint> out;
  for (const auto& ray : rays_or_default(rays, split.task_count())) {
    validate_ray(ray);
    const auto logits = ad::forward(model.net.spec, model.net.params, append_ray(inputs, ray));
    out.push_back(score_logits(logits, split));
    out.back().ray = ray;
  }
  return out;
}

std::vector<EvalPoint> evaluate(const HyperNetModel& model, const problems::Split& split,
                                std::span<const PreferenceRay> rays) {
  std::vector<EvalPoint> out;
  for (const auto& ray : rays_or_default(rays, split.task_count())) {
    out.push_back(evaluate(model.target, phn_target_weights(model, ray), split));
    out.back().ray = ray;
  }
  return out;
}

std::vector<EvalPoint> evaluate(const PmtlModels& models, const problems::Split& split) {
  std::vector<EvalPoint> out;
  for (std::size_t k = 0; k < models.models.size(); ++k) {
    out.push_back(evaluate(models.models[k], split));
    out.back().ray = models.rays[k];
  }
  return out;
}

std::vector<std::vector<double>> mcr_points(std::span<const EvalPoint> points) {
  std::vector<std::vector<double>> out;
  for (const auto& p : points) out.push_back(p.mcr);
  return out;
}

std::vector<std::vector<double>> ce_points(std::span<const EvalPoint> points) {
  std::vector<std::vector<double>> out;
  for (const auto& p : points) out.push_back(p.ce);
  return out;
}

}  // namespace moobench::solvers
