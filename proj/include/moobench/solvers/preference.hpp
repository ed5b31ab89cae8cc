#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "moobench/ad/tape.hpp"

namespace moobench::solvers {

/// Trade-off weights on the (J-1)-simplex.
using PreferenceRay = std::vector<double>;

/// Throws std::invalid_argument unless the ray is non-negative and sums to 1 within 1e-9.
void validate_ray(std::span<const double> ray);

/// Symmetric Dirichlet(alpha) draw via normalized Gamma(alpha, 1) samples.
PreferenceRay sample_preference(double alpha, std::size_t task_count, std::mt19937_64& rng);
PreferenceRay sample_preference(double alpha, std::size_t task_count, std::uint64_t seed);

/// All simplex points with coordinates in {0, 1/r, ..., 1} where r = count - 1.
/// For two tasks this is `count` evenly spaced rays from (1, 0) to (0, 1).
std::vector<PreferenceRay> evenly_spaced_rays(std::size_t task_count, std::size_t count);

/// Σ ray_j L_j - lambda * cos(ray, L); the cosine term is 0 when |L| = 0.
double cosmos_loss(std::span<const double> losses, std::span<const double> ray, double lambda);
/// The same objective recorded on a tape over scalar loss nodes.
ad::Var cosmos_loss(std::span<const ad::Var> losses, std::span<const double> ray, double lambda);

}  // namespace moobench::solvers
