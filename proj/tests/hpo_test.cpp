#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "moobench/hpo/search.hpp"
#include "moobench/problems/glyphs.hpp"

using namespace moobench;
using namespace moobench::hpo;
using solvers::MethodKind;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t count_fields(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST_CASE("grid sizes") {
  CHECK(SearchSpace::base().size() == 351);
  CHECK(enumerate_grid(SearchSpace::base()).size() == 351);
  CHECK(method_specific_space(MethodKind::uniform).size() == 351);
  CHECK(method_specific_space(MethodKind::mgda).size() == 1404);
  CHECK(method_specific_space(MethodKind::cosmos).size() == 351 * 30);
  CHECK(method_specific_space(MethodKind::phn).size() == 351 * 6);
  CHECK_FALSE(method_specific_space(MethodKind::phn).extension.note.empty());

  SearchSpace one;
  one.learning_rates = {1e-3};
  one.weight_decays = {0.0};
  one.schedulers = {ad::ScheduleKind::none};
  const auto g = enumerate_grid(one);
  REQUIRE(g.size() == 1);
  CHECK(g[0].lr == 1e-3);
  CHECK_FALSE(g[0].alpha.has_value());
}

TEST_CASE("grid enumeration order and indices") {
  const auto g = enumerate_grid(method_specific_space(MethodKind::mgda));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i].index == i);
  CHECK(g[0].lr == 1e-2);
  CHECK(g[1].lr == 1e-2);
  CHECK(g[1].norm_mode != g[0].norm_mode);
  CHECK(g[4].scheduler != g[0].scheduler);
  CHECK(g[12].weight_decay != g[0].weight_decay);
  CHECK(g[156].lr == 7.5e-3);
  std::set<std::tuple<double, double, int, int>> unique;
  for (const auto& c : g)
    unique.insert({c.lr, c.weight_decay, static_cast<int>(c.scheduler), static_cast<int>(*c.norm_mode)});
  CHECK(unique.size() == g.size());
}

TEST_CASE("trial config substitution") {
  const auto g = enumerate_grid(method_specific_space(MethodKind::cosmos));
  const auto& c = g[37];
  auto base = solvers::SolverConfig::defaults_for(MethodKind::cosmos);
  base.epochs = 7;
  const auto s = c.apply(base);
  CHECK(s.lr == c.lr);
  CHECK(s.weight_decay == c.weight_decay);
  CHECK(s.schedule == c.scheduler);
  CHECK(s.alpha == *c.alpha);
  CHECK(s.lambda == *c.lambda);
  CHECK(s.epochs == 7);
}

TEST_CASE("random sampling draws distinct grid points") {
  const auto space = SearchSpace::base();
  const auto grid = enumerate_grid(space);
  const auto s = sample_random(space, 100, 0);
  REQUIRE(s.size() == 100);
  std::set<std::size_t> seen;
  for (const auto& c : s) {
    seen.insert(c.index);
    CHECK(c == grid[c.index]);
  }
  CHECK(seen.size() == 100);
  CHECK(sample_random(space, 100, 0) == s);
  CHECK(sample_random(space, 100, 1) != s);

  const auto all = sample_random(space, 351, 4);
  std::set<std::size_t> every;
  for (const auto& c : all) every.insert(c.index);
  CHECK(every.size() == 351);
  CHECK(sample_random(space, 0, 4).empty());
  CHECK_THROWS_AS(sample_random(space, 352, 0), std::invalid_argument);
}

TEST_CASE("random sampling includes every point with equal probability") {
  const auto space = SearchSpace::base();
  const std::size_t draws = 2000, budget = 100;
  std::vector<std::size_t> hits(space.size(), 0);
  for (std::size_t seed = 0; seed < draws; ++seed)
    for (const auto& c : sample_random(space, budget, seed)) ++hits[c.index];
  const double p = double(budget) / double(space.size());
  const double mean = draws * p, sd = std::sqrt(draws * p * (1.0 - p));
  for (std::size_t h : hits) CHECK(std::abs(double(h) - mean) < 5.0 * sd);
}

TEST_CASE("search space validation") {
  auto s = SearchSpace::base();
  CHECK_NOTHROW(s.validate());
  s.learning_rates.clear();
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = SearchSpace::base();
  s.weight_decays.push_back(s.weight_decays.front());
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("best trial selection") {
  std::vector<Trial> trials(4);
  for (std::size_t i = 0; i < 4; ++i) trials[i].config.index = i;
  CHECK_FALSE(select_best(trials).has_value());
  trials[1].status = TrialStatus::completed;
  trials[1].val_hv_ce = 0.4;
  trials[2].status = TrialStatus::completed;
  trials[2].val_hv_ce = 0.6;
  trials[3].status = TrialStatus::completed;
  trials[3].val_hv_ce = 0.6;
  trials[0].val_hv_ce = 0.9;
  CHECK(select_best(trials) == 2u);
  trials[3].val_hv_mcr = 1.0;
  CHECK(select_best(trials) == 2u);
}

TEST_CASE("search with a scoring function") {
  const auto configs = enumerate_grid(SearchSpace::base());
  const std::vector<TrialConfig> some(configs.begin(), configs.begin() + 20);
  auto score = [](const solvers::SolverConfig& c) {
    if (c.schedule == ad::ScheduleKind::step) throw std::runtime_error("diverged");
    return TrialScore{c.lr * 10.0 + c.weight_decay, 0.5};
  };
  for (std::size_t jobs : {1u, 4u}) {
    const auto r = run_search(some, solvers::SolverConfig{}, score, SearchOptions{jobs, false});
    REQUIRE(r.trials.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) CHECK(r.trials[i].config.index == i);
    CHECK(r.trials[1].status == TrialStatus::failed);
    CHECK(r.trials[1].error == "diverged");
    REQUIRE(r.best.has_value());
    CHECK(r.best_trial().config.index == 0);
    CHECK_FALSE(r.trials[0].wall_seconds.has_value());
  }
  const auto timed = run_search(some, solvers::SolverConfig{}, score, SearchOptions{1, true});
  CHECK(timed.trials[0].wall_seconds.has_value());

  auto all_fail = [](const solvers::SolverConfig&) -> TrialScore { throw std::runtime_error("x"); };
  CHECK_FALSE(run_search(some, solvers::SolverConfig{}, all_fail).best.has_value());
}

TEST_CASE("scoring evaluation points") {
  std::vector<solvers::EvalPoint> pts(2);
  pts[0].mcr = {0.2, 0.6};
  pts[0].ce = {0.5, 0.5};
  pts[1].mcr = {0.6, 0.2};
  pts[1].ce = {2.0, 0.1};
  const auto s = score_points(pts, {1.0, 1.0});
  CHECK(s.hv_mcr == doctest::Approx(0.8 * 0.4 + 0.4 * 0.4));
  CHECK(s.hv_ce == doctest::Approx(0.25));
  const auto one = score_points(pts, {1.0, 1.0}, 1);
  CHECK(one.hv_mcr == doctest::Approx(0.8));
  CHECK(one.hv_ce == doctest::Approx(0.9));
  CHECK(parse_search_mode("grid") == SearchMode::grid);
  CHECK_THROWS_AS(parse_search_mode("bayes"), std::invalid_argument);
}

TEST_CASE("trial log format") {
  SearchResult r;
  const auto space = method_specific_space(MethodKind::mgda);
  const auto grid = enumerate_grid(space);
  r.trials.resize(2);
  r.trials[0].config = grid[5];
  r.trials[0].solver.method = MethodKind::mgda;
  r.trials[0].status = TrialStatus::completed;
  r.trials[0].val_hv_ce = 0.25;
  r.trials[0].val_hv_mcr = 0.5;
  r.trials[1].config = grid[9];
  r.trials[1].solver.method = MethodKind::mgda;
  r.trials[1].wall_seconds = 1.5;
  std::ostringstream out;
  write_trial_log(out, r, space);
  const auto l = lines(out.str());
  REQUIRE(l.size() == 3);
  CHECK(l[0] == "config_index,method,lr,wd,scheduler,norm_mode,status,val_hv_ce,val_hv_mcr,wall_seconds");
  CHECK(l[1].rfind("5,mgda,0.01,", 0) == 0);
  CHECK(l[1].find(",completed,0.25,0.5,-") != std::string::npos);
  CHECK(l[2].find(",failed,-,-,1.5") != std::string::npos);
  for (const auto& line : l) CHECK(count_fields(line) == 10);
}

TEST_CASE("random search on a small glyph problem") {
  problems::MergedGlyphConfig dc;
  dc.train_count = 200;
  dc.validation_count = 80;
  dc.test_count = 10;
  const auto d = problems::generate_glyph_dataset(dc, 2);
  const ad::NetworkSpec spec{144, {8}, 1.0, {}, 2, 10};
  SearchRequest req;
  req.base = solvers::SolverConfig::defaults_for(MethodKind::uniform);
  req.base.epochs = 1;
  req.base.batch_size = 50;
  req.base.seed = 9;
  req.budget = 4;
  req.sample_seed = 3;
  const auto a = run_search(req, spec, d.train, d.validation, SearchOptions{2, false});
  const auto b = run_search(req, spec, d.train, d.validation);
  REQUIRE(a.trials.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.trials[i].status == TrialStatus::completed);
    CHECK(a.trials[i].val_hv_ce == b.trials[i].val_hv_ce);
    CHECK(a.trials[i].solver.seed == 9);
    CHECK((a.trials[i].val_hv_mcr >= 0.0 && a.trials[i].val_hv_mcr <= 1.0));
  }
  CHECK(a.best == b.best);

  req.base = solvers::SolverConfig::defaults_for(MethodKind::single_task);
  req.base.epochs = 1;
  req.base.task = 1;
  req.budget = 2;
  const auto st = run_search(req, spec, d.train, d.validation);
  CHECK(st.trials[0].status == TrialStatus::completed);

  req.ref = {1.0};
  CHECK_THROWS_AS(run_search(req, spec, d.train, d.validation), std::invalid_argument);
}
