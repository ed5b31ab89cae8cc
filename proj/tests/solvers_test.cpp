#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "moobench/ad/gradcheck.hpp"
#include "moobench/core/hypervolume.hpp"
#include "moobench/solvers/analytic_solvers.hpp"
#include "moobench/solvers/method.hpp"

using namespace moobench;
using namespace moobench::solvers;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<std::vector<double>> random_gradients(std::mt19937_64& rng, std::size_t J, std::size_t dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<std::vector<double>> g(J, std::vector<double>(dim));
  for (auto& v : g)
    for (auto& x : v) x = n(rng);
  return g;
}

const problems::GlyphDataset& tiny_data() {
  static const problems::GlyphDataset d = [] {
    problems::MergedGlyphConfig c;
    c.train_count = 256;
    c.validation_count = 64;
    c.test_count = 128;
    return problems::generate_glyph_dataset(c, 1);
  }();
  return d;
}

ad::NetworkSpec tiny_spec() { return ad::NetworkSpec{144, {8}, 1.0, {}, 2, 10}; }

SolverConfig tiny_config(MethodKind m) {
  auto c = SolverConfig::defaults_for(m);
  c.epochs = 2;
  c.batch_size = 32;
  c.lr = 5e-3;
  c.seed = 3;
  return c;
}

struct Trajectory {
  std::vector<ad::ParameterSet> steps;
  StepObserver observer() {
    return [this](std::size_t, const ad::ParameterSet& p) { steps.push_back(p); };
  }
};

}  // namespace

TEST_CASE("min-norm closed-form examples") {
  const std::vector<double> ones{1.0, 1.0};
  const std::vector<std::vector<double>> opposite{{1.0, 2.0, -1.0}, {-1.0, -2.0, 1.0}};
  auto r = min_norm_frank_wolfe(opposite, NormMode::none, ones);
  CHECK(r.norm == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.weights[0] == doctest::Approx(0.5));
  CHECK(r.weights[1] == doctest::Approx(0.5));

  const std::vector<std::vector<double>> same{{0.3, -0.4}, {0.3, -0.4}};
  r = min_norm_frank_wolfe(same, NormMode::none, ones);
  CHECK(r.direction[0] == doctest::Approx(0.3));
  CHECK(r.direction[1] == doctest::Approx(-0.4));

  const std::vector<std::vector<double>> axes{{1.0, 0.0}, {0.0, 1.0}};
  r = min_norm_frank_wolfe(axes, NormMode::none, ones);
  CHECK(r.weights[0] == doctest::Approx(0.5));
  CHECK(r.direction[0] == doctest::Approx(0.5));
  CHECK(r.direction[1] == doctest::Approx(0.5));
}

TEST_CASE("min-norm agrees with the two-gradient closed form") {
  std::mt19937_64 rng(10);
  const std::vector<double> ones{1.0, 1.0};
  for (int t = 0; t < 1000; ++t) {
    const auto g = random_gradients(rng, 2, 2 + rng() % 99);
    std::vector<double> diff(g[0].size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = g[1][i] - g[0][i];
    const double gamma = std::clamp(dot(diff, g[1]) / dot(diff, diff), 0.0, 1.0);
    const auto r = min_norm_frank_wolfe(g, NormMode::none, ones);
    double dist = 0.0;
    for (std::size_t i = 0; i < diff.size(); ++i) {
      const double d = gamma * g[0][i] + (1.0 - gamma) * g[1][i] - r.direction[i];
      dist += d * d;
    }
    CHECK(std::sqrt(dist) <= 1e-6);
  }
}

TEST_CASE("min-norm optimality condition and simplex integrity") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t J = 2 + rng() % 4;
    auto g = random_gradients(rng, J, 2 + rng() % 30);
    std::vector<double> losses(J);
    for (auto& l : losses) l = 0.1 + static_cast<double>(rng() % 100) / 50.0;
    const auto mode = static_cast<NormMode>(rng() % 4);
    const auto r = min_norm_frank_wolfe(g, mode, losses);
    const auto factors = normalization_factors(g, mode, losses);
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    for (double w : r.weights) CHECK(w >= 0.0);
    const double dd = dot(r.direction, r.direction);
    for (std::size_t j = 0; j < J; ++j) {
      std::vector<double> gj = g[j];
      for (auto& x : gj) x /= factors[j];
      CHECK(dot(gj, r.direction) >= dd - 1e-8);
    }
  }
}

TEST_CASE("min-norm matches a weight-grid brute force for three gradients") {
  std::mt19937_64 rng(12);
  const std::vector<double> ones(3, 1.0);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_gradients(rng, 3, 5);
    double best = 1e300;
    const int steps = 1000;
    for (int a = 0; a <= steps; ++a) {
      for (int b = 0; a + b <= steps; ++b) {
        const double w[3] = {a / double(steps), b / double(steps), (steps - a - b) / double(steps)};
        double n = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
          const double d = w[0] * g[0][i] + w[1] * g[1][i] + w[2] * g[2][i];
          n += d * d;
        }
        best = std::min(best, n);
      }
    }
    const auto r = min_norm_frank_wolfe(g, NormMode::none, ones);
    CHECK(r.norm * r.norm <= best + 1e-12);
    CHECK(r.norm * r.norm >= best - 1e-3);
  }
}

TEST_CASE("gradient normalization modes") {
  const std::vector<std::vector<double>> g{{3.0, 4.0}, {0.0, 2.0}};
  const std::vector<double> losses{2.0, 0.5};
  CHECK(normalization_factors(g, NormMode::l2, losses) == std::vector<double>{5.0, 2.0});
  CHECK(normalization_factors(g, NormMode::loss, losses) == std::vector<double>{2.0, 0.5});
  CHECK(normalization_factors(g, NormMode::loss_plus, losses) == std::vector<double>{10.0, 1.0});
  CHECK(normalization_factors(g, NormMode::none, losses) == std::vector<double>{1.0, 1.0});

  const std::vector<std::vector<double>> zero{{0.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(normalization_factors(zero, NormMode::l2, losses), std::invalid_argument);
  CHECK_THROWS_AS(normalization_factors(zero, NormMode::loss_plus, losses), std::invalid_argument);
  const std::vector<double> bad{0.0, 1.0};
  CHECK_THROWS_AS(normalization_factors(g, NormMode::loss, bad), std::invalid_argument);
  CHECK(parse_norm_mode("loss+") == NormMode::loss_plus);
  CHECK(to_string(NormMode::loss_plus) == "loss+");
}

TEST_CASE("Dirichlet preference sampling") {
  std::mt19937_64 rng(13);
  std::vector<double> mean(3, 0.0);
  for (int t = 0; t < 10000; ++t) {
    const auto r = sample_preference(1.2, 3, rng);
    CHECK(std::accumulate(r.begin(), r.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(r[j] >= 0.0);
      mean[j] += r[j] / 10000.0;
    }
  }
  for (double m : mean) CHECK(std::abs(m - 1.0 / 3.0) < 0.01);

  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto r = sample_preference(1000.0, 2, rng);
    worst = std::max(worst, std::abs(r[0] - 0.5));
  }
  CHECK(worst < 0.05);
  CHECK(sample_preference(0.2, 2, std::uint64_t{5}) == sample_preference(0.2, 2, std::uint64_t{5}));
  CHECK_THROWS_AS(sample_preference(0.0, 2, rng), std::invalid_argument);
}

TEST_CASE("evenly spaced rays and ray validation") {
  const auto rays = evenly_spaced_rays(2, 11);
  REQUIRE(rays.size() == 11);
  CHECK(rays.front() == PreferenceRay{1.0, 0.0});
  CHECK(rays.back() == PreferenceRay{0.0, 1.0});
  CHECK(rays[5][0] == doctest::Approx(0.5));
  CHECK(evenly_spaced_rays(3, 3).size() == 6);
  for (const auto& r : evenly_spaced_rays(3, 5)) CHECK_NOTHROW(validate_ray(r));
  CHECK_THROWS_AS(validate_ray(PreferenceRay{0.6, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(validate_ray(PreferenceRay{1.2, -0.2}), std::invalid_argument);
}

TEST_CASE("cosmos loss") {
  const std::vector<double> losses{0.4, 0.8}, ray{0.25, 0.75};
  CHECK(cosmos_loss(losses, ray, 0.0) == doctest::Approx(0.25 * 0.4 + 0.75 * 0.8));
  const std::vector<double> parallel{0.5, 1.5};
  CHECK(cosmos_loss(parallel, ray, 2.0) == doctest::Approx(0.25 * 0.5 + 0.75 * 1.5 - 2.0));
  CHECK(cosmos_loss(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0, 0.0}, 3.0) == 0.0);
  CHECK(cosmos_loss(std::vector<double>{0.0, 0.0}, ray, 3.0) == 0.0);

  ad::Tape tape;
  std::vector<ad::Var> vars{tape.leaf(ad::Tensor::scalar(0.4)), tape.leaf(ad::Tensor::scalar(0.8))};
  const ad::Var v = cosmos_loss(vars, ray, 2.0);
  CHECK(v.value().item() == doctest::Approx(cosmos_loss(losses, ray, 2.0)).epsilon(1e-14));
  tape.backward(v);
  const std::vector<double> analytic{vars[0].grad().item(), vars[1].grad().item()};
  auto f = [&](std::span<const double> l) { return cosmos_loss(l, ray, 2.0); };
  CHECK(ad::finite_diff_check(f, analytic, losses, 1e-6) < 1e-6);
}

TEST_CASE("single task and scalarized reduction identities") {
  const auto& d = tiny_data();
  const auto spec = tiny_spec();

  Trajectory uniform, fixed;
  train_scalarized(uniform_ray(2), spec, d.train, tiny_config(MethodKind::uniform), uniform.observer());
  auto fw = tiny_config(MethodKind::fixed_weight);
  fw.ray = {0.5, 0.5};
  train_scalarized(fw.ray, spec, d.train, fw, fixed.observer());
  REQUIRE(uniform.steps.size() == fixed.steps.size());
  for (std::size_t s = 0; s < uniform.steps.size(); ++s) CHECK(uniform.steps[s] == fixed.steps[s]);

  Trajectory st, first;
  train_single_task(0, spec, d.train, tiny_config(MethodKind::single_task), st.observer());
  train_scalarized({1.0, 0.0}, spec, d.train, tiny_config(MethodKind::fixed_weight), first.observer());
  REQUIRE(st.steps.size() == first.steps.size());
  for (std::size_t s = 0; s < st.steps.size(); ++s) {
    CHECK(st.steps[s].shared == first.steps[s].shared);
    CHECK(st.steps[s].per_task[0] == first.steps[s].per_task[0]);
  }
  const auto init = ad::init_parameters(spec, derive_seed(3, streams::init));
  CHECK(st.steps.back().per_task[1] == init.per_task[1]);

  auto zero = tiny_config(MethodKind::single_task);
  zero.epochs = 0;
  CHECK(train_single_task(1, spec, d.train, zero).params == init);
}

TEST_CASE("one task: single task, scalarized, MGDA and PMTL coincide") {
  auto d = tiny_data();
  d.train.labels.resize(1);
  const ad::NetworkSpec spec{144, {8}, 1.0, {}, 1, 10};
  const auto cfg = tiny_config(MethodKind::uniform);
  const auto st = train_single_task(0, spec, d.train, cfg);
  const auto sc = train_scalarized({1.0}, spec, d.train, cfg);
  const auto mg = train_mgda(spec, d.train, cfg);
  auto pcfg = cfg;
  pcfg.ray_count = 3;
  const auto pm = train_pmtl(spec, d.train, pcfg);
  CHECK(st.params == sc.params);
  CHECK(st.params == mg.params);
  for (const auto& m : pm.models) CHECK(m.params == st.params);
}

TEST_CASE("MGDA with identical task gradients follows Uniform") {
  auto d = tiny_data();
  d.train.labels[1] = d.train.labels[0];
  const auto spec = tiny_spec();
  auto cfg = tiny_config(MethodKind::mgda);
  cfg.epochs = 1;

  const auto init = ad::init_parameters(spec, derive_seed(cfg.seed, streams::init));
  CHECK(init.per_task[0] != init.per_task[1]);

  const auto batches = problems::epoch_batches(d.train, cfg.batch_size, 0);
  ad::ParameterSet p_mgda = init, p_uni = init;
  p_mgda.per_task[1] = p_mgda.per_task[0];
  p_uni.per_task[1] = p_uni.per_task[0];
  ad::OptimizerState s_mgda, s_uni;
  for (const auto& b : batches) {
    const auto lg = ad::loss_and_grads(spec, p_mgda, b, ad::PerTaskShared{});
    std::vector<std::vector<double>> shared(2);
    for (std::size_t j = 0; j < 2; ++j)
      for (const auto& t : lg.grads[j].shared)
        shared[j].insert(shared[j].end(), t.values().begin(), t.values().end());
    CHECK(shared[0] == shared[1]);
    const auto mn = min_norm_frank_wolfe(shared, NormMode::none, lg.losses);
    CHECK(mn.direction == shared[0]);

    auto step = ad::zeros_like(p_mgda);
    step.shared = lg.grads[0].shared;
    for (std::size_t j = 0; j < 2; ++j) step.per_task[j] = lg.grads[j].per_task[j];
    ad::adam_step(p_mgda, step, s_mgda, cfg.lr, 0.0);

    const auto u = ad::loss_and_grads(spec, p_uni, b, ad::Scalarized{{0.5, 0.5}});
    ad::adam_step(p_uni, u.grads[0], s_uni, cfg.lr, 0.0);
  }
  // Uniform sees the same direction at half the scale; Adam removes the scale
  // up to its epsilon term.
  const auto a = p_mgda.flatten(), b = p_uni.flatten();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  CHECK(worst < 1e-5);
}

TEST_CASE("MGDA on the analytic problem reaches the Pareto set") {
  const problems::AnalyticProblem p{{0.0, 0.0, 0.0}, {1.0, 0.5, -0.5}};
  std::mt19937_64 rng(14);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    const auto run = mgda_analytic(p, {n(rng), n(rng), n(rng)}, 0.05, 100000, 1e-4);
    CHECK(run.min_norm <= 1e-4);
    CHECK(problems::distance_to_pareto_set(p, run.x) <= 1e-2);
  }
}

TEST_CASE("scalarized analytic front matches the analytic Pareto front") {
  const problems::AnalyticProblem p{{0.0, 0.0}, {1.0, 0.0}};
  std::vector<core::ObjectiveVector> pts;
  for (const auto& ray : evenly_spaced_rays(2, 11)) {
    pts.push_back(scalarized_analytic(p, ray, {0.3, 0.7}, 0.1, 5000).objectives);
  }
  const double hv = core::hypervolume_exact_2d(pts, core::kUnitReference);
  const double exact = core::hypervolume_exact_2d(problems::analytic_pareto_front(p, 11), core::kUnitReference);
  CHECK(std::abs(hv - exact) <= 0.02 * exact);
}

TEST_CASE("PMTL regions and analytic behaviour") {
  const auto rays = evenly_spaced_rays(2, 2);
  const std::vector<double> big_first{0.8, 0.2};
  CHECK(region_violations(big_first, rays, 0)[1] < 0.0);
  CHECK(region_violations(big_first, rays, 1)[0] > 0.0);
  CHECK(pmtl_warmup_weights(big_first, rays, 0) == std::vector<double>{0.0, 0.0});

  const problems::AnalyticProblem p{{0.0, 0.0}, {1.0, 0.0}};
  const auto five = evenly_spaced_rays(2, 5);
  std::vector<AnalyticRun> runs;
  for (std::size_t k = 0; k < five.size(); ++k) {
    runs.push_back(pmtl_analytic(p, five, k, {0.5, 0.8}, 0.05, 3000));
    for (double v : region_violations(runs.back().objectives, five, k)) CHECK(v <= 1e-9);
    CHECK(problems::distance_to_pareto_set(p, runs.back().x) < 1e-6);
  }
  for (std::size_t k = 0; k < five.size(); ++k) {
    CHECK(std::abs(runs[k].objectives[0] - runs[4 - k].objectives[1]) < 1e-6);
  }
}

TEST_CASE("PMTL on glyphs keeps each model near its region") {
  const auto& d = tiny_data();
  auto cfg = tiny_config(MethodKind::pmtl);
  cfg.ray_count = 3;
  cfg.epochs = 12;
  cfg.lr = 1e-2;
  cfg.pmtl_warmup_steps = 90;
  const auto models = train_pmtl(tiny_spec(), d.train, cfg);
  REQUIRE(models.models.size() == 3);
  const auto batch = problems::full_batch(d.train);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto lg = ad::loss_and_grads(tiny_spec(), models.models[k].params, batch, ad::Scalarized{{0.5, 0.5}});
    CHECK(models.reached_region[k]);
    // Constraints are enforced on minibatches; allow 5% of |L| on the full split.
    const double scale = std::hypot(lg.losses[0], lg.losses[1]);
    for (double v : region_violations(lg.losses, models.rays, k)) CHECK(v <= 0.05 * scale);
  }
  const auto points = evaluate(models, d.test);
  REQUIRE(points.size() == 3);
  CHECK(points[1].ray == models.rays[1]);
}

TEST_CASE("COSMOS training and evaluation") {
  const auto& d = tiny_data();
  const auto spec = tiny_spec();
  auto cfg = tiny_config(MethodKind::cosmos);
  const auto a = train_cosmos(spec, d.train, cfg);
  const auto b = train_cosmos(spec, d.train, cfg);
  CHECK(a.net.params == b.net.params);
  CHECK(a.net.spec.input_dim == 146);
  const auto points = evaluate(a, d.test);
  REQUIRE(points.size() == kDefaultEvalRays);
  for (const auto& p : points) {
    REQUIRE(p.ray.has_value());
    for (double m : p.mcr) CHECK((m >= 0.0 && m <= 1.0));
  }

  // lambda = 0 and a constant ray: plain scalarization of the conditioned network.
  cfg.lambda = 0.0;
  Trajectory fixed;
  train_cosmos(spec, d.train, cfg, fixed.observer(), PreferenceRay{0.5, 0.5});
  CHECK(fixed.steps.size() == 16);

  const auto x = ad::Tensor({2, 2}, std::vector<double>{1, 2, 3, 4});
  const auto y = append_ray(x, PreferenceRay{0.25, 0.75});
  CHECK(y.values()[2] == 0.25);
  CHECK(y.values()[7] == 0.75);
  CHECK(y.values()[4] == 3.0);
}

TEST_CASE("PHN hypernetwork") {
  const auto& d = tiny_data();
  const auto spec = tiny_spec();
  auto cfg = tiny_config(MethodKind::phn);
  cfg.phn_hidden = 8;
  const auto model = train_phn(spec, d.train, cfg);
  const auto w1 = phn_target_weights(model, {0.9, 0.1});
  const auto w2 = phn_target_weights(model, {0.1, 0.9});
  const auto shape_ref = ad::zero_parameters(spec);
  for (const auto* w : {&w1, &w2}) {
    const auto got = w->tensors();
    const auto want = shape_ref.tensors();
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i]->shape() == want[i]->shape());
  }
  double dist = 0.0;
  const auto f1 = w1.flatten(), f2 = w2.flatten();
  for (std::size_t i = 0; i < f1.size(); ++i) dist += (f1[i] - f2[i]) * (f1[i] - f2[i]);
  CHECK(dist > 0.0);
  CHECK(phn_target_weights(model, {0.9, 0.1}) == w1);
  CHECK(evaluate(model, d.test).size() == kDefaultEvalRays);
}

TEST_CASE("PHN gradient through the hypernetwork matches finite differences") {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 5; ++t) {
    const ad::NetworkSpec target{3, {3}, 1.0, {}, 2, 3};
    auto model = init_hypernet(target, 4, rng());
    for (auto& v : model.hyper_params.per_task[0][0].values()) v = 0.5 * n(rng);
    ad::Batch batch{ad::Tensor({4, 3}), {std::vector<int>(4), std::vector<int>(4)}, 0};
    for (auto& v : batch.inputs.values()) v = n(rng);
    for (auto& l : batch.labels)
      for (auto& y : l) y = static_cast<int>(rng() % 3);
    const PreferenceRay ray = sample_preference(1.0, 2, rng);
    const auto [loss, grads] = phn_loss_and_grad(model, batch, ray);
    CHECK(std::isfinite(loss));
    auto scratch = model;
    auto f = [&](std::span<const double> flat) {
      scratch.hyper_params.assign_flat(flat);
      return phn_loss_and_grad(scratch, batch, ray).first;
    };
    CHECK(ad::finite_diff_check(f, grads.flatten(), model.hyper_params.flatten(), 1e-5) < 1e-3);
  }
}

TEST_CASE("evaluation metrics") {
  problems::Split split;
  split.feature_dim = 1;
  split.pixels = {0.0, 0.0, 0.0};
  split.labels = {{0, 1, 2}, {2, 2, 2}};
  split.ids = {0, 1, 2};
  std::vector<ad::Tensor> perfect{ad::Tensor({3, 3}, std::vector<double>{9, 0, 0, 0, 9, 0, 0, 0, 9}),
                                  ad::Tensor({3, 3}, std::vector<double>{0, 0, 9, 0, 0, 9, 0, 0, 9})};
  const auto p = score_logits(perfect, split);
  CHECK(p.mcr == std::vector<double>{0.0, 0.0});

  std::vector<ad::Tensor> flat{ad::Tensor({3, 3}), ad::Tensor({3, 3})};
  const auto q = score_logits(flat, split);
  CHECK(q.ce[0] == doctest::Approx(std::log(3.0)));
  CHECK(q.mcr[0] == doctest::Approx(2.0 / 3.0));
  CHECK(q.mcr[1] == 1.0);

  // Random logits on ten classes sit near chance level.
  std::mt19937_64 rng(16);
  std::normal_distribution<double> n(0.0, 1e-3);
  problems::Split big;
  big.feature_dim = 1;
  big.labels.assign(1, {});
  for (int i = 0; i < 5000; ++i) {
    big.pixels.push_back(0.0);
    big.labels[0].push_back(static_cast<int>(rng() % 10));
    big.ids.push_back(static_cast<std::uint64_t>(i));
  }
  ad::Tensor logits({5000, 10});
  for (auto& v : logits.values()) v = n(rng);
  const std::vector<ad::Tensor> blocks{logits};
  const auto r = score_logits(blocks, big);
  CHECK(std::abs(r.mcr[0] - 0.9) < 0.02);
  CHECK(r.ce[0] == doctest::Approx(std::log(10.0)).epsilon(1e-3));

  CHECK_THROWS_AS(evaluate(MultiHeadModel{tiny_spec(), ad::zero_parameters(tiny_spec())}, problems::Split{}),
                  std::invalid_argument);
}

TEST_CASE("single task pair combines per-task scores") {
  const auto& d = tiny_data();
  const auto spec = tiny_spec();
  const auto cfg = tiny_config(MethodKind::single_task);
  const auto pair = train_single_task_all(spec, d.train, cfg);
  const auto combined = evaluate(pair, d.test);
  CHECK(combined.mcr[0] == evaluate(pair.models[0], d.test).mcr[0]);
  CHECK(combined.mcr[1] == evaluate(pair.models[1], d.test).mcr[1]);
}

TEST_CASE("solver config validation and dispatch") {
  auto c = SolverConfig::defaults_for(MethodKind::cosmos);
  CHECK(c.alpha == 1.2);
  CHECK(c.lambda == 2.0);
  CHECK(SolverConfig::defaults_for(MethodKind::phn).alpha == 0.2);
  c.lambda = -1.0;
  CHECK_THROWS_AS(c.validate(2), std::invalid_argument);
  auto f = SolverConfig::defaults_for(MethodKind::fixed_weight);
  CHECK_THROWS_AS(f.validate(2), std::invalid_argument);
  auto p = SolverConfig::defaults_for(MethodKind::pmtl);
  p.ray_count = 1;
  CHECK_THROWS_AS(p.validate(2), std::invalid_argument);
  CHECK(parse_method("mgda") == MethodKind::mgda);
  CHECK_THROWS_AS(parse_method("epo"), std::invalid_argument);
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));

  const auto& d = tiny_data();
  auto u = tiny_config(MethodKind::uniform);
  u.epochs = 1;
  const auto trained = train_method(u, tiny_spec(), d.train);
  CHECK(std::holds_alternative<MultiHeadModel>(trained));
  CHECK(evaluate_method(trained, d.test).size() == 1);
}
