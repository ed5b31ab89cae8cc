#pragma once

#include <array>
#include <span>
#include <vector>

#include "moobench/core/pareto.hpp"

namespace moobench::problems {

/// f1(x) = |x - a|^2, f2(x) = |x - b|^2. The Pareto set is the segment [a, b];
/// there is no objective-specific part of x, so the objectives genuinely compete.
struct AnalyticProblem {
  std::vector<double> a;
  std::vector<double> b;

  std::size_t dim() const { return a.size(); }
  /// Throws std::invalid_argument if a and b differ in size, are empty or coincide.
  void validate() const;
};

core::ObjectiveVector analytic_eval(const AnalyticProblem& p, std::span<const double> x);
std::array<std::vector<double>, 2> analytic_grads(const AnalyticProblem& p, std::span<const double> x);

/// Images of k equally spaced points on [a, b], from a to b.
core::Front analytic_pareto_front(const AnalyticProblem& p, std::size_t k);

/// Euclidean distance from x to the segment [a, b].
double distance_to_pareto_set(const AnalyticProblem& p, std::span<const double> x);

}  // namespace moobench::problems
