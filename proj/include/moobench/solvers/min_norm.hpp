#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace moobench::solvers {

/// Gradient normalization applied before the min-norm search.
///   l2:        g / |g|
///   loss:      g / L
///   loss_plus: g / (L * |g|)
///   none:      g
enum class NormMode { l2, loss, loss_plus, none };

std::string to_string(NormMode mode);
/// Accepts "l2", "loss", "loss+" and "none".
NormMode parse_norm_mode(const std::string& name);

/// Divisors that map each raw gradient to its normalized form.
/// Throws std::invalid_argument on zero-norm gradients (l2, loss+) or
/// non-positive losses (loss, loss+).
std::vector<double> normalization_factors(std::span<const std::vector<double>> gradients,
                                          NormMode mode, std::span<const double> losses);

struct MinNormResult {
  std::vector<double> weights;    ///< on the simplex
  std::vector<double> direction;  ///< Σ weights_j * normalized gradient_j
  double norm = 0.0;
  double gap = 0.0;               ///< |d|^2 - min_j <g_j, d> at termination
  std::size_t iterations = 0;
};

/// Minimum-norm point of the convex hull of the rows of a Gram matrix.
///
/// Frank-Wolfe with away steps and exact line search on the simplex. Starts
/// at the vertex of smallest norm and stops once the duality gap
/// |d|^2 - min_j <g_j, d> drops below `tol` or after `max_iter` iterations.
/// `gram` is row-major n x n.
std::vector<double> min_norm_weights(std::span<const double> gram, std::size_t n,
                                     std::size_t max_iter, double tol, double* gap_out = nullptr,
                                     std::size_t* iterations_out = nullptr);

/// Normalizes the gradients according to `mode` and finds the min-norm
/// element of their convex hull. Weights and direction refer to the
/// normalized gradients.
MinNormResult min_norm_frank_wolfe(std::span<const std::vector<double>> gradients, NormMode mode,
                                   std::span<const double> losses, std::size_t max_iter = 10000,
                                   double tol = 1e-12);

}  // namespace moobench::solvers
