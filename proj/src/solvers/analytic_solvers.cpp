#include "moobench/solvers/analytic_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "moobench/solvers/pmtl.hpp"

namespace moobench::solvers {
namespace {

double min_norm_at(const problems::AnalyticProblem& p, std::span<const double> x, NormMode mode,
                   std::vector<double>* direction) {
  const auto g = analytic_grads(p, x);
  const auto f = analytic_eval(p, x);
  // A zero gradient means x is already optimal for that objective.
  for (const auto& gj : g) {
    double n = 0.0;
    for (double v : gj) n += v * v;
    if (n == 0.0) {
      if (direction) direction->assign(x.size(), 0.0);
      return 0.0;
    }
  }
  const auto r = min_norm_frank_wolfe(g, mode, f);
  if (direction) *direction = r.direction;
  return r.norm;
}

void check_start(const problems::AnalyticProblem& p, std::span<const double> x0, double lr) {
  p.validate();
  if (x0.size() != p.dim()) throw std::invalid_argument("analytic solver: start point dimension mismatch");
  if (!(lr > 0.0)) throw std::invalid_argument("analytic solver: lr must be positive");
}

}  // namespace

AnalyticRun mgda_analytic(const problems::AnalyticProblem& p, std::vector<double> x0, double lr,
                          std::size_t max_iter, double tol, NormMode mode) {
  check_start(p, x0, lr);
  AnalyticRun run{std::move(x0), {}, 0.0, 0};
  std::vector<double> d;
  run.min_norm = min_norm_at(p, run.x, mode, &d);
  while (run.min_norm > tol && run.iterations < max_iter) {
    for (std::size_t i = 0; i < run.x.size(); ++i) run.x[i] -= lr * d[i];
    ++run.iterations;
    run.min_norm = min_norm_at(p, run.x, mode, &d);
  }
  run.objectives = analytic_eval(p, run.x);
  return run;
}

AnalyticRun scalarized_analytic(const problems::AnalyticProblem& p, const PreferenceRay& ray,
                                std::vector<double> x0, double lr, std::size_t max_iter,
                                double tol) {
  check_start(p, x0, lr);
  validate_ray(ray);
  if (ray.size() != 2) throw std::invalid_argument("scalarized_analytic: the problem has two objectives");
  AnalyticRun run{std::move(x0), {}, 0.0, 0};
  for (; run.iterations < max_iter; ++run.iterations) {
    const auto g = analytic_grads(p, run.x);
    double step = 0.0;
    for (std::size_t i = 0; i < run.x.size(); ++i) {
      const double delta = lr * (ray[0] * g[0][i] + ray[1] * g[1][i]);
      run.x[i] -= delta;
      step += delta * delta;
    }
    if (std::sqrt(step) <= tol) {
      ++run.iterations;
      break;
    }
  }
  run.objectives = analytic_eval(p, run.x);
  run.min_norm = min_norm_at(p, run.x, NormMode::none, nullptr);
  return run;
}

AnalyticRun pmtl_analytic(const problems::AnalyticProblem& p, std::span<const PreferenceRay> rays,
                          std::size_t k, std::vector<double> x0, double lr, std::size_t max_iter,
                          std::size_t warmup) {
  check_start(p, x0, lr);
  AnalyticRun run{std::move(x0), {}, 0.0, 0};
  bool in_warmup = true;
  for (; run.iterations < max_iter; ++run.iterations) {
    const auto f = analytic_eval(p, run.x);
    const auto g = analytic_grads(p, run.x);
    std::vector<double> w;
    if (in_warmup) {
      const auto v = region_violations(f, rays, k);
      if (std::all_of(v.begin(), v.end(), [](double x) { return x <= 0.0; }) ||
          run.iterations >= warmup) {
        in_warmup = false;
      } else {
        w = pmtl_warmup_weights(f, rays, k);
      }
    }
    if (!in_warmup) {
      std::vector<double> gram(4, 0.0);
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t i = 0; i < run.x.size(); ++i) gram[a * 2 + b] += g[a][i] * g[b][i];
      w = pmtl_task_weights(gram, f, rays, k);
    }
    for (std::size_t i = 0; i < run.x.size(); ++i) run.x[i] -= lr * (w[0] * g[0][i] + w[1] * g[1][i]);
  }
  run.objectives = analytic_eval(p, run.x);
  run.min_norm = min_norm_at(p, run.x, NormMode::none, nullptr);
  return run;
}

}  // namespace moobench::solvers
