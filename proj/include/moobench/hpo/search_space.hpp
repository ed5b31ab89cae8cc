#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moobench/solvers/config.hpp"

namespace moobench::hpo {

/// Method-specific dimensions appended after (lr, wd, scheduler).
struct Extension {
  std::vector<solvers::NormMode> norm_modes;
  std::vector<double> alphas;
  std::vector<double> lambdas;
  std::string note;

  bool empty() const { return norm_modes.empty() && alphas.empty() && lambdas.empty(); }
};

struct SearchSpace {
  std::vector<double> learning_rates;
  std::vector<double> weight_decays;
  std::vector<ad::ScheduleKind> schedulers;
  Extension extension;

  /// 9 learning rates x 13 weight decays x {cosine, step, none}.
  static SearchSpace base();
  std::size_t size() const;
  /// Throws std::invalid_argument on an empty dimension or duplicate values.
  void validate() const;
};

/// The base space plus the method's extension: MGDA norm modes, COSMOS alpha
/// x lambda, PHN alpha (only the linear-scalarization internal solver exists).
SearchSpace method_specific_space(solvers::MethodKind method);

/// One point of a search space. `index` is its position in enumerate_grid.
struct TrialConfig {
  std::size_t index = 0;
  double lr = 0.0;
  double weight_decay = 0.0;
  ad::ScheduleKind scheduler = ad::ScheduleKind::none;
  std::optional<solvers::NormMode> norm_mode;
  std::optional<double> alpha;
  std::optional<double> lambda;

  /// `base` with this point's hyperparameters substituted.
  solvers::SolverConfig apply(solvers::SolverConfig base) const;
  bool operator==(const TrialConfig&) const = default;
};

/// Cartesian product, lr-major, then weight decay, scheduler, norm mode, alpha, lambda.
std::vector<TrialConfig> enumerate_grid(const SearchSpace& space);

/// `budget` distinct grid points drawn uniformly without replacement, in draw order.
/// Throws std::invalid_argument if budget exceeds the grid size.
std::vector<TrialConfig> sample_random(const SearchSpace& space, std::size_t budget,
                                       std::uint64_t seed);

}  // namespace moobench::hpo
