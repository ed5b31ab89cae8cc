#include "moobench/hpo/search.hpp"

#include <algorithm>
#include <charconv>
#include <atomic>
#include <chrono>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "moobench/core/hypervolume.hpp"

namespace moobench::hpo {

std::string to_string(TrialStatus status) {
  return status == TrialStatus::completed ? "completed" : "failed";
}

std::string to_string(SearchMode mode) { return mode == SearchMode::grid ? "grid" : "random"; }

SearchMode parse_search_mode(const std::string& name) {
  if (name == "random") return SearchMode::random;
  if (name == "grid") return SearchMode::grid;
  throw std::invalid_argument("unknown search mode '" + name + "' (expected random or grid)");
}

const Trial& SearchResult::best_trial() const {
  if (!best) throw std::runtime_error("search produced no completed trial");
  return trials.at(*best);
}

std::optional<std::size_t> select_best(const std::vector<Trial>& trials) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& t = trials[i];
    if (t.status != TrialStatus::completed) continue;
    if (!best) {
      best = i;
      continue;
    }
    const auto& b = trials[*best];
    if (t.val_hv_ce > b.val_hv_ce || (t.val_hv_ce == b.val_hv_ce && t.config.index < b.config.index)) {
      best = i;
    }
  }
  return best;
}

SearchResult run_search(const std::vector<TrialConfig>& configs, const solvers::SolverConfig& base,
                        const TrialFn& score, const SearchOptions& options) {
  SearchResult result;
  result.trials.resize(configs.size());
  auto run_one = [&](std::size_t i) {
    Trial& t = result.trials[i];
    t.config = configs[i];
    t.solver = configs[i].apply(base);
    const auto start = std::chrono::steady_clock::now();
    try {
      const TrialScore s = score(t.solver);
      t.val_hv_ce = s.hv_ce;
      t.val_hv_mcr = s.hv_mcr;
      t.status = TrialStatus::completed;
    } catch (const std::exception& e) {
      t.status = TrialStatus::failed;
      t.error = e.what();
    }
    if (options.record_wall_time) {
      t.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, configs.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) run_one(i);
      });
    }
  }

  std::stable_sort(result.trials.begin(), result.trials.end(),
                   [](const Trial& a, const Trial& b) { return a.config.index < b.config.index; });
  result.best = select_best(result.trials);
  return result;
}

TrialScore score_points(const std::vector<solvers::EvalPoint>& points,
                        const core::ObjectiveVector& ref, std::optional<std::size_t> task) {
  std::vector<core::ObjectiveVector> ce, mcr;
  for (const auto& p : points) {
    if (task) {
      ce.push_back({p.ce.at(*task)});
      mcr.push_back({p.mcr.at(*task)});
    } else {
      ce.push_back(p.ce);
      mcr.push_back(p.mcr);
    }
  }
  core::ObjectiveVector r = task ? core::ObjectiveVector{ref.at(*task)} : ref;
  return {core::hypervolume(ce, r), core::hypervolume(mcr, r)};
}

SearchResult run_search(const SearchRequest& request, const ad::NetworkSpec& spec,
                        const problems::Split& train, const problems::Split& validation,
                        const SearchOptions& options) {
  if (validation.size() == 0) throw std::invalid_argument("run_search: empty validation split");
  if (request.ref.size() != spec.task_count) {
    throw std::invalid_argument("run_search: reference point needs one value per task");
  }
  const SearchSpace space = method_specific_space(request.base.method);
  const auto configs = request.mode == SearchMode::grid
                           ? enumerate_grid(space)
                           : sample_random(space, request.budget, request.sample_seed);
  const bool single = request.base.method == solvers::MethodKind::single_task;

  auto score = [&](const solvers::SolverConfig& config) {
    const auto model = solvers::train_method(config, spec, train);
    const auto points = solvers::evaluate_method(model, validation, request.eval_rays);
    return score_points(points, request.ref,
                        single ? std::optional<std::size_t>(config.task) : std::nullopt);
  };
  SearchResult result = run_search(configs, request.base, score, options);
  result.note = space.extension.note;
  return result;
}

void write_trial_log(std::ostream& out, const SearchResult& result, const SearchSpace& space) {
  const auto& ext = space.extension;
  out << "config_index,method,lr,wd,scheduler";
  if (!ext.norm_modes.empty()) out << ",norm_mode";
  if (!ext.alphas.empty()) out << ",alpha";
  if (!ext.lambdas.empty()) out << ",lambda";
  out << ",status,val_hv_ce,val_hv_mcr,wall_seconds\n";

  auto num = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  for (const auto& t : result.trials) {
    out << t.config.index << ',' << solvers::to_string(t.solver.method) << ',' << num(t.config.lr) << ','
        << num(t.config.weight_decay) << ',' << ad::to_string(t.config.scheduler);
    if (!ext.norm_modes.empty()) out << ',' << (t.config.norm_mode ? to_string(*t.config.norm_mode) : "-");
    if (!ext.alphas.empty()) {
      out << ',';
      if (t.config.alpha) out << num(*t.config.alpha); else out << '-';
    }
    if (!ext.lambdas.empty()) {
      out << ',';
      if (t.config.lambda) out << num(*t.config.lambda); else out << '-';
    }
    out << ',' << to_string(t.status) << ',';
    if (t.status == TrialStatus::completed) {
      out << num(t.val_hv_ce) << ',' << num(t.val_hv_mcr);
    } else {
      out << "-,-";
    }
    out << ',';
    if (t.wall_seconds) out << num(*t.wall_seconds); else out << '-';
    out << '\n';
  }
}

}  // namespace moobench::hpo
