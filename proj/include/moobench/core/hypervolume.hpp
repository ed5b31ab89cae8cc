#pragma once

#include <cstdint>
#include <span>

#include "moobench/core/pareto.hpp"

namespace moobench::core {

/// Reference point used throughout the benchmark for error rates in [0, 1].
inline const ObjectiveVector kUnitReference{1.0, 1.0};

/// Exact dominated area for two objectives.
///
/// Every point is clipped coordinate-wise to `ref` first, so coordinates at or
/// beyond the reference contribute nothing. Implemented as a sweep over the
/// points sorted by the first objective.
///
/// Throws std::invalid_argument for J != 2 (use hypervolume_mc) or on
/// non-finite input.
double hypervolume_exact_2d(std::span<const ObjectiveVector> points, std::span<const double> ref);

/// Monte-Carlo estimate of the dominated volume for any number of objectives.
///
/// Samples uniformly from the box spanned by the coordinate-wise minimum of
/// the clipped points and `ref`. Deterministic for a given seed.
double hypervolume_mc(std::span<const ObjectiveVector> points, std::span<const double> ref,
                      std::uint64_t sample_count, std::uint64_t seed);

/// Exact for one and two objectives (one objective: ref - min, clipped at 0),
/// Monte-Carlo with the given sample budget and seed beyond that.
double hypervolume(std::span<const ObjectiveVector> points, std::span<const double> ref,
                   std::uint64_t mc_samples = 200000, std::uint64_t mc_seed = 0);

/// Gap to the Single Task reference. Positive when the method is worse.
inline double delta_st(double single_task_hv, double method_hv) {
  return single_task_hv - method_hv;
}

}  // namespace moobench::core
