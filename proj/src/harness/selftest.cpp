#include "moobench/harness/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "moobench/ad/gradcheck.hpp"
#include "moobench/core/hypervolume.hpp"
#include "moobench/solvers/phn.hpp"

namespace moobench::harness {
namespace {

struct Suite {
  const char* name;
  bool pass;
  double worst;
  double limit;
};

Suite hv_suite() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::uint64_t samples = 200000;
  const double limit = 4.0 * std::sqrt(0.25 / static_cast<double>(samples));
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::vector<core::ObjectiveVector> pts(1 + rng() % 8);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const double exact = core::hypervolume_exact_2d(pts, core::kUnitReference);
    const double mc = core::hypervolume_mc(pts, core::kUnitReference, samples, rng());
    worst = std::max(worst, std::abs(exact - mc));
  }
  return {"hypervolume exact vs monte-carlo", worst <= limit, worst, limit};
}

Suite min_norm_suite() {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = 2 + rng() % 49;
    std::vector<std::vector<double>> g(2, std::vector<double>(dim));
    for (auto& v : g)
      for (auto& x : v) x = n(rng);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      num += (g[1][i] - g[0][i]) * g[1][i];
      den += (g[0][i] - g[1][i]) * (g[0][i] - g[1][i]);
    }
    const double gamma = std::clamp(num / den, 0.0, 1.0);
    const std::vector<double> losses{1.0, 1.0};
    const auto r = solvers::min_norm_frank_wolfe(g, solvers::NormMode::none, losses);
    double dist = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = gamma * g[0][i] + (1.0 - gamma) * g[1][i] - r.direction[i];
      dist += d * d;
    }
    worst = std::max(worst, std::sqrt(dist));
  }
  return {"min-norm frank-wolfe vs closed form", worst <= 1e-6, worst, 1e-6};
}

ad::Batch random_batch(std::mt19937_64& rng, std::size_t rows, std::size_t dim, std::size_t tasks,
                       std::size_t classes) {
  std::normal_distribution<double> n(0.0, 1.0);
  ad::Batch b;
  b.inputs = ad::Tensor({rows, dim});
  for (auto& v : b.inputs.values()) v = n(rng);
  b.labels.assign(tasks, std::vector<int>(rows));
  for (auto& l : b.labels)
    for (auto& y : l) y = static_cast<int>(rng() % classes);
  return b;
}

Suite network_suite() {
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    ad::NetworkSpec spec{3, {4}, 1.0, {3}, 2, 3};
    const auto params = ad::init_parameters(spec, rng());
    worst = std::max(worst, ad::finite_diff_check(spec, params, random_batch(rng, 4, 3, 2, 3), 1e-5));
  }
  return {"finite differences through the network", worst < 1e-4, worst, 1e-4};
}

Suite hypernet_suite() {
  std::mt19937_64 rng(14);
  const ad::NetworkSpec target{3, {3}, 1.0, {}, 2, 3};
  auto model = solvers::init_hypernet(target, 4, 5);
  for (auto& v : model.hyper_params.per_task[0][0].values()) v *= 50.0;
  const auto batch = random_batch(rng, 4, 3, 2, 3);
  const solvers::PreferenceRay ray{0.3, 0.7};
  const auto [loss, grads] = solvers::phn_loss_and_grad(model, batch, ray);
  (void)loss;
  auto scratch = model;
  auto f = [&](std::span<const double> flat) {
    scratch.hyper_params.assign_flat(flat);
    return solvers::phn_loss_and_grad(scratch, batch, ray).first;
  };
  const double worst =
      ad::finite_diff_check(f, grads.flatten(), model.hyper_params.flatten(), 1e-5);
  return {"finite differences through the hypernetwork", worst < 1e-3, worst, 1e-3};
}

}  // namespace

bool run_selftest(std::ostream& out) {
  bool all = true;
  for (const auto& s : {hv_suite(), min_norm_suite(), network_suite(), hypernet_suite()}) {
    out << (s.pass ? "PASS " : "FAIL ") << s.name << " (worst " << s.worst << ", limit " << s.limit
        << ")\n";
    all = all && s.pass;
  }
  return all;
}

}  // namespace moobench::harness
