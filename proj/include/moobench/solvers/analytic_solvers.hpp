#pragma once

#include <span>
#include <vector>

#include "moobench/problems/analytic.hpp"
#include "moobench/solvers/min_norm.hpp"
#include "moobench/solvers/preference.hpp"

namespace moobench::solvers {

/// Final state of plain gradient descent on an analytic problem.
struct AnalyticRun {
  std::vector<double> x;
  core::ObjectiveVector objectives;
  /// Norm of the min-norm element of the (normalized) objective gradients at x.
  double min_norm = 0.0;
  std::size_t iterations = 0;
};

/// x <- x - lr * d with d the min-norm point of the gradient hull; stops
/// once |d| <= tol or after max_iter steps.
AnalyticRun mgda_analytic(const problems::AnalyticProblem& p, std::vector<double> x0, double lr,
                          std::size_t max_iter, double tol, NormMode mode = NormMode::none);

/// Gradient descent on Σ ray_j f_j for max_iter steps (or until the step is below tol).
AnalyticRun scalarized_analytic(const problems::AnalyticProblem& p, const PreferenceRay& ray,
                                std::vector<double> x0, double lr, std::size_t max_iter,
                                double tol = 1e-14);

/// Two-phase PMTL for the model bound to ray k: descend the violated region
/// constraints for at most `warmup` steps, then the min-norm direction over
/// the objective gradients and active constraints.
AnalyticRun pmtl_analytic(const problems::AnalyticProblem& p, std::span<const PreferenceRay> rays,
                          std::size_t k, std::vector<double> x0, double lr, std::size_t max_iter,
                          std::size_t warmup = 100);

}  // namespace moobench::solvers
