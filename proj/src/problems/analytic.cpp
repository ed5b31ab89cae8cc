#include "moobench/problems/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moobench::problems {

void AnalyticProblem::validate() const {
  if (a.empty() || a.size() != b.size()) {
    throw std::invalid_argument("AnalyticProblem: anchors must be non-empty and equally sized");
  }
  if (a == b) throw std::invalid_argument("AnalyticProblem: anchors coincide");
}

core::ObjectiveVector analytic_eval(const AnalyticProblem& p, std::span<const double> x) {
  if (x.size() != p.dim()) throw std::invalid_argument("analytic_eval: dimension mismatch");
  double fa = 0.0, fb = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fa += (x[i] - p.a[i]) * (x[i] - p.a[i]);
    fb += (x[i] - p.b[i]) * (x[i] - p.b[i]);
  }
  return {fa, fb};
}

std::array<std::vector<double>, 2> analytic_grads(const AnalyticProblem& p, std::span<const double> x) {
  if (x.size() != p.dim()) throw std::invalid_argument("analytic_grads: dimension mismatch");
  std::array<std::vector<double>, 2> g{std::vector<double>(x.size()), std::vector<double>(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[0][i] = 2.0 * (x[i] - p.a[i]);
    g[1][i] = 2.0 * (x[i] - p.b[i]);
  }
  return g;
}

core::Front analytic_pareto_front(const AnalyticProblem& p, std::size_t k) {
  p.validate();
  if (k < 2) throw std::invalid_argument("analytic_pareto_front: need k >= 2");
  core::Front front;
  std::vector<double> x(p.dim());
  for (std::size_t i = 0; i < k; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(k - 1);
    for (std::size_t d = 0; d < x.size(); ++d) x[d] = (1.0 - t) * p.a[d] + t * p.b[d];
    front.push_back(analytic_eval(p, x));
  }
  return front;
}

double distance_to_pareto_set(const AnalyticProblem& p, std::span<const double> x) {
  double ab2 = 0.0, proj = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    ab2 += (p.b[i] - p.a[i]) * (p.b[i] - p.a[i]);
    proj += (x[i] - p.a[i]) * (p.b[i] - p.a[i]);
  }
  const double t = std::clamp(proj / ab2, 0.0, 1.0);
  double d2 = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double closest = p.a[i] + t * (p.b[i] - p.a[i]);
    d2 += (x[i] - closest) * (x[i] - closest);
  }
  return std::sqrt(d2);
}

}  // namespace moobench::problems
