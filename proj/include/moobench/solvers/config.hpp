#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "moobench/ad/network.hpp"
#include "moobench/ad/schedule.hpp"
#include "moobench/solvers/min_norm.hpp"
#include "moobench/solvers/preference.hpp"

namespace moobench::solvers {

enum class MethodKind { single_task, uniform, fixed_weight, mgda, cosmos, phn, pmtl };

std::string to_string(MethodKind method);
/// Accepts the names produced by to_string (single_task, uniform, ...).
MethodKind parse_method(const std::string& name);

/// Everything needed to reproduce one training run.
struct SolverConfig {
  MethodKind method = MethodKind::uniform;

  std::size_t task = 0;                   ///< single_task
  PreferenceRay ray;                      ///< fixed_weight
  NormMode norm_mode = NormMode::none;    ///< mgda
  double alpha = 1.2;                     ///< cosmos / phn Dirichlet concentration
  double lambda = 2.0;                    ///< cosmos cosine penalty weight
  std::size_t ray_count = 5;              ///< pmtl
  std::size_t phn_hidden = 32;            ///< phn hypernetwork hidden width
  std::size_t pmtl_warmup_steps = 100;    ///< pmtl phase-1 budget in minibatches

  double lr = 1e-3;
  double weight_decay = 0.0;
  ad::ScheduleKind schedule = ad::ScheduleKind::cosine;
  std::size_t epochs = 10;
  std::size_t batch_size = 64;
  std::uint64_t seed = 0;

  /// Method-specific defaults
  /// (COSMOS alpha 1.2 and lambda 2, PHN alpha 0.2).
  static SolverConfig defaults_for(MethodKind method);

  /// Throws std::invalid_argument on inconsistent settings for `task_count` tasks.
  void validate(std::size_t task_count) const;
  /// One-line key=value description used as provenance.
  std::string describe() const;
};

/// Per-task misclassification rates and mean cross-entropies on one split.
struct EvalPoint {
  std::vector<double> mcr;
  std::vector<double> ce;
  std::optional<PreferenceRay> ray;
};

/// Called after every optimizer step with the step count and current parameters.
using StepObserver = std::function<void(std::size_t step, const ad::ParameterSet& params)>;

/// Independent random stream for (seed, purpose, index), via splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index = 0);

namespace streams {
inline constexpr std::uint64_t init = 1;
inline constexpr std::uint64_t shuffle = 2;
inline constexpr std::uint64_t rays = 3;
inline constexpr std::uint64_t warmup = 4;
}  // namespace streams

}  // namespace moobench::solvers
