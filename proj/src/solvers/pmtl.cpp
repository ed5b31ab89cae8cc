#include "moobench/solvers/pmtl.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace moobench::solvers {
namespace {

std::vector<double> unit(const PreferenceRay& r) {
  double n = 0.0;
  for (double v : r) n += v * v;
  n = std::sqrt(n);
  std::vector<double> u(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) u[j] = r[j] / n;
  return u;
}

// Row m holds the task coefficients of ∇G_m, i.e. u_m - u_k.
std::vector<std::vector<double>> constraint_rows(std::span<const PreferenceRay> rays, std::size_t k) {
  const auto uk = unit(rays[k]);
  std::vector<std::vector<double>> rows(rays.size());
  for (std::size_t m = 0; m < rays.size(); ++m) {
    const auto um = unit(rays[m]);
    rows[m].resize(uk.size());
    for (std::size_t j = 0; j < uk.size(); ++j) rows[m][j] = um[j] - uk[j];
  }
  return rows;
}

void check_args(std::span<const double> losses, std::span<const PreferenceRay> rays, std::size_t k) {
  if (k >= rays.size()) throw std::invalid_argument("pmtl: ray index out of range");
  for (const auto& r : rays) {
    if (r.size() != losses.size()) throw std::invalid_argument("pmtl: ray/loss dimension mismatch");
  }
}

}  // namespace

std::vector<double> region_violations(std::span<const double> losses,
                                      std::span<const PreferenceRay> rays, std::size_t k) {
  check_args(losses, rays, k);
  const auto rows = constraint_rows(rays, k);
  std::vector<double> g(rays.size(), 0.0);
  for (std::size_t m = 0; m < rays.size(); ++m) {
    if (m == k) continue;
    for (std::size_t j = 0; j < losses.size(); ++j) g[m] += rows[m][j] * losses[j];
  }
  return g;
}

std::vector<double> pmtl_warmup_weights(std::span<const double> losses,
                                        std::span<const PreferenceRay> rays, std::size_t k) {
  const auto g = region_violations(losses, rays, k);
  const auto rows = constraint_rows(rays, k);
  std::vector<double> w(losses.size(), 0.0);
  for (std::size_t m = 0; m < rays.size(); ++m) {
    if (m == k || g[m] <= 0.0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] += rows[m][j];
  }
  return w;
}

std::vector<double> pmtl_task_weights(std::span<const double> task_gram,
                                      std::span<const double> losses,
                                      std::span<const PreferenceRay> rays, std::size_t k,
                                      double margin) {
  const std::size_t J = losses.size();
  if (task_gram.size() != J * J) throw std::invalid_argument("pmtl_task_weights: Gram size mismatch");
  const auto g = region_violations(losses, rays, k);
  const auto rows = constraint_rows(rays, k);

  // Every candidate vector as task coefficients: identity rows, then active constraints.
  std::vector<std::vector<double>> coef;
  for (std::size_t j = 0; j < J; ++j) {
    coef.emplace_back(J, 0.0);
    coef.back()[j] = 1.0;
  }
  for (std::size_t m = 0; m < rays.size(); ++m) {
    if (m != k && g[m] >= -margin) coef.push_back(rows[m]);
  }

  const std::size_t n = coef.size();
  std::vector<double> gram(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = 0; j < J; ++j) s += coef[a][i] * task_gram[i * J + j] * coef[b][j];
      gram[a * n + b] = s;
    }
  }
  const auto gamma = min_norm_weights(gram, n, 10000, 1e-12);
  std::vector<double> w(J, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t j = 0; j < J; ++j) w[j] += gamma[a] * coef[a][j];
  return w;
}

PmtlModels train_pmtl(const ad::NetworkSpec& spec, const problems::Split& train,
                      const SolverConfig& config) {
  spec.validate();
  detail::require_input_dim(spec, train.feature_dim, "train_pmtl");
  if (config.ray_count < 2) throw std::invalid_argument("train_pmtl: ray_count must be at least 2");
  const std::size_t J = spec.task_count;

  PmtlModels out;
  out.rays = evenly_spaced_rays(J, config.ray_count);
  if (J == 1) {
    for (std::size_t k = 0; k < out.rays.size(); ++k) {
      out.models.push_back(train_single_task(0, spec, train, config));
      out.reached_region.push_back(true);
    }
    return out;
  }

  for (std::size_t k = 0; k < out.rays.size(); ++k) {
    MultiHeadModel model{spec, ad::init_parameters(spec, derive_seed(config.seed, streams::init))};
    ad::OptimizerState state;
    std::size_t warmup_steps = 0;
    bool in_warmup = true, reached = false;

    detail::run_epochs(train, config, [&](const ad::Batch& batch, double lr) {
      const auto lg = ad::loss_and_grads(spec, model.params, batch, ad::PerTaskShared{});
      std::vector<double> weights;
      if (in_warmup) {
        const auto g = region_violations(lg.losses, out.rays, k);
        bool inside = true;
        for (double v : g) inside = inside && v <= 0.0;
        if (inside) {
          reached = true;
          in_warmup = false;
        } else if (warmup_steps >= config.pmtl_warmup_steps) {
          in_warmup = false;
          std::cerr << "warning: pmtl model " << k << " did not reach its region within "
                    << config.pmtl_warmup_steps << " warm-up steps\n";
        } else {
          ++warmup_steps;
          weights = pmtl_warmup_weights(lg.losses, out.rays, k);
        }
      }
      if (!in_warmup && weights.empty()) {
        std::vector<std::vector<double>> flat(J);
        for (std::size_t j = 0; j < J; ++j) flat[j] = lg.grads[j].flatten();
        std::vector<double> gram(J * J, 0.0);
        for (std::size_t a = 0; a < J; ++a) {
          for (std::size_t b = a; b < J; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < flat[a].size(); ++i) s += flat[a][i] * flat[b][i];
            gram[a * J + b] = gram[b * J + a] = s;
          }
        }
        weights = pmtl_task_weights(gram, lg.losses, out.rays, k);
      }

      ad::ParameterSet step = ad::zeros_like(model.params);
      auto dst = step.tensors();
      for (std::size_t j = 0; j < J; ++j) {
        const auto src = lg.grads[j].tensors();
        for (std::size_t t = 0; t < dst.size(); ++t) {
          auto d = dst[t]->values();
          const auto s = src[t]->values();
          for (std::size_t i = 0; i < d.size(); ++i) d[i] += weights[j] * s[i];
        }
      }
      ad::adam_step(model.params, step, state, lr, config.weight_decay);
    });
    out.models.push_back(std::move(model));
    out.reached_region.push_back(reached);
  }
  return out;
}

}  // namespace moobench::solvers
