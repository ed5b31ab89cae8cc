#pragma once

#include <span>
#include <vector>

#include "moobench/solvers/training.hpp"

namespace moobench::solvers {

/// Simplified Pareto multi-task learning: one independently trained network
/// per preference ray. Region k holds the loss vectors whose cosine to ray k
/// is at least their cosine to every other ray.
struct PmtlModels {
  std::vector<MultiHeadModel> models;
  std::vector<PreferenceRay> rays;
  /// Whether phase 1 reached the region before the warm-up budget ran out.
  std::vector<bool> reached_region;
};

/// Constraint values G_m = <u_m - u_k, L> for every ray m (G_k = 0), with u
/// the rays scaled to unit length. L lies in region k iff all G_m <= 0.
std::vector<double> region_violations(std::span<const double> losses,
                                      std::span<const PreferenceRay> rays, std::size_t k);

inline constexpr double kPmtlActiveMargin = 1e-2;

/// Phase-2 task weights: the min-norm point over the task gradients and the
/// gradients of constraints with G_m >= -margin, expressed as one weight per
/// task (constraint gradients are linear in the task gradients).
/// `task_gram` is the row-major J x J Gram matrix of the task gradients.
std::vector<double> pmtl_task_weights(std::span<const double> task_gram,
                                      std::span<const double> losses,
                                      std::span<const PreferenceRay> rays, std::size_t k,
                                      double margin = kPmtlActiveMargin);

/// Phase-1 task weights: the sum of the gradients of violated constraints.
std::vector<double> pmtl_warmup_weights(std::span<const double> losses,
                                        std::span<const PreferenceRay> rays, std::size_t k);

/// Rays are evenly_spaced_rays(J, config.ray_count). With one task every
/// model is a plain single-task run.
PmtlModels train_pmtl(const ad::NetworkSpec& spec, const problems::Split& train,
                      const SolverConfig& config);

}  // namespace moobench::solvers
