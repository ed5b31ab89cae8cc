#include "moobench/solvers/method.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "moobench/solvers/evaluate.hpp"

namespace moobench::solvers {

std::string to_string(MethodKind method) {
  switch (method) {
    case MethodKind::single_task: return "single_task";
    case MethodKind::uniform: return "uniform";
    case MethodKind::fixed_weight: return "fixed_weight";
    case MethodKind::mgda: return "mgda";
    case MethodKind::cosmos: return "cosmos";
    case MethodKind::phn: return "phn";
    case MethodKind::pmtl: return "pmtl";
  }
  return "uniform";
}

MethodKind parse_method(const std::string& name) {
  for (auto m : {MethodKind::single_task, MethodKind::uniform, MethodKind::fixed_weight,
                 MethodKind::mgda, MethodKind::cosmos, MethodKind::phn, MethodKind::pmtl}) {
    if (name == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected single_task, uniform, fixed_weight, mgda, cosmos, phn "
                              "or pmtl)");
}

SolverConfig SolverConfig::defaults_for(MethodKind method) {
  SolverConfig c;
  c.method = method;
  if (method == MethodKind::phn) c.alpha = 0.2;
  return c;
}

void SolverConfig::validate(std::size_t task_count) const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("SolverConfig: " + msg); };
  if (!(lr > 0.0)) fail("lr must be positive");
  if (!(weight_decay >= 0.0)) fail("weight_decay must be non-negative");
  if (batch_size == 0) fail("batch_size must be positive");
  switch (method) {
    case MethodKind::single_task:
      if (task >= task_count) fail("task index " + std::to_string(task) + " out of range");
      break;
    case MethodKind::fixed_weight:
      if (ray.size() != task_count) fail("fixed_weight ray needs one weight per task");
      validate_ray(ray);
      break;
    case MethodKind::cosmos:
      if (!(alpha > 0.0)) fail("alpha must be positive");
      if (!(lambda >= 0.0)) fail("lambda must be non-negative");
      break;
    case MethodKind::phn:
      if (!(alpha > 0.0)) fail("alpha must be positive");
      if (phn_hidden == 0) fail("phn_hidden must be positive");
      break;
    case MethodKind::pmtl:
      if (ray_count < 2) fail("ray_count must be at least 2");
      break;
    case MethodKind::uniform:
    case MethodKind::mgda:
      break;
  }
}

std::string SolverConfig::describe() const {
  auto num = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  std::ostringstream s;
  s << "method=" << to_string(method) << " lr=" << num(lr)
    << " wd=" << num(weight_decay) << " scheduler=" << ad::to_string(schedule) << " epochs=" << epochs
    << " batch=" << batch_size << " seed=" << seed;
  switch (method) {
    case MethodKind::single_task: s << " task=" << task; break;
    case MethodKind::fixed_weight:
      s << " ray=";
      for (std::size_t j = 0; j < ray.size(); ++j) s << (j ? ":" : "") << num(ray[j]);
      break;
    case MethodKind::mgda: s << " norm=" << to_string(norm_mode); break;
    case MethodKind::cosmos: s << " alpha=" << num(alpha) << " lambda=" << num(lambda); break;
    case MethodKind::phn: s << " alpha=" << num(alpha) << " solver=ls hidden=" << phn_hidden; break;
    case MethodKind::pmtl: s << " rays=" << ray_count << " variant=simplified"; break;
    case MethodKind::uniform: break;
  }
  return s.str();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ purpose) ^ index);
}

TrainedMethod train_method(const SolverConfig& config, const ad::NetworkSpec& spec,
                           const problems::Split& train, const StepObserver& observer) {
  config.validate(spec.task_count);
  switch (config.method) {
    case MethodKind::single_task:
      return MultiHeadModel(train_single_task(config.task, spec, train, config, observer));
    case MethodKind::uniform:
      return train_scalarized(uniform_ray(spec.task_count), spec, train, config, observer);
    case MethodKind::fixed_weight:
      return train_scalarized(config.ray, spec, train, config, observer);
    case MethodKind::mgda:
      return train_mgda(spec, train, config, observer);
    case MethodKind::cosmos:
      return train_cosmos(spec, train, config, observer);
    case MethodKind::phn:
      return train_phn(spec, train, config, observer);
    case MethodKind::pmtl:
      return train_pmtl(spec, train, config);
  }
  throw std::logic_error("train_method: unhandled method");
}

SingleTaskModels train_single_task_all(const ad::NetworkSpec& spec, const problems::Split& train,
                                       const SolverConfig& config) {
  SingleTaskModels out;
  for (std::size_t j = 0; j < spec.task_count; ++j) {
    out.models.push_back(train_single_task(j, spec, train, config));
  }
  return out;
}

std::vector<EvalPoint> evaluate_method(const TrainedMethod& method, const problems::Split& split,
                                       std::span<const PreferenceRay> rays) {
  return std::visit(
      [&](const auto& m) -> std::vector<EvalPoint> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MultiHeadModel>) {
          return {evaluate(m, split)};
        } else if constexpr (std::is_same_v<T, SingleTaskModels>) {
          return {evaluate(m, split)};
        } else if constexpr (std::is_same_v<T, CosmosModel>) {
          return evaluate(m, split, rays);
        } else if constexpr (std::is_same_v<T, HyperNetModel>) {
          return evaluate(m, split, rays);
        } else {
          return evaluate(m, split);
        }
      },
      method);
}

}  // namespace moobench::solvers
