#include "moobench/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "moobench/core/hypervolume.hpp"

namespace moobench::harness {
namespace {

using solvers::MethodKind;

template <typename F>
void parallel_for(std::size_t n, std::size_t jobs, F&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

solvers::SolverConfig fixed_config(const ExperimentPlan& plan, MethodKind method) {
  auto cfg = solvers::SolverConfig::defaults_for(method);
  cfg.lr = plan.lr;
  cfg.weight_decay = plan.weight_decay;
  cfg.schedule = plan.scheduler;
  cfg.epochs = plan.epochs;
  cfg.batch_size = plan.batch_size;
  cfg.ray = plan.ray;
  return cfg;
}

std::vector<solvers::PreferenceRay> eval_rays(const ExperimentPlan& plan) {
  return solvers::evenly_spaced_rays(2, plan.eval_rays);
}

std::size_t method_param_count(const ad::NetworkSpec& spec, const solvers::SolverConfig& cfg) {
  switch (cfg.method) {
    case MethodKind::single_task: {
      ad::NetworkSpec one = spec;
      one.task_count = 1;
      return ad::param_count(one) * spec.task_count;
    }
    case MethodKind::cosmos: return ad::param_count(solvers::cosmos_spec(spec));
    case MethodKind::phn: return ad::param_count(solvers::hypernet_spec(spec, cfg.phn_hidden));
    case MethodKind::pmtl:
      return ad::param_count(spec) * solvers::evenly_spaced_rays(spec.task_count, cfg.ray_count).size();
    default: return ad::param_count(spec);
  }
}

auto cell_key(const ResultRecord& r) { return std::tie(r.method, r.dataset, r.c, r.seed); }

}  // namespace

Stat mean_std(const std::vector<double>& values) {
  if (values.empty()) return {};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

void sort_records(std::vector<ResultRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ResultRecord& a, const ResultRecord& b) { return cell_key(a) < cell_key(b); });
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRecord>& records) {
  std::vector<ResultRecord> sorted = records;
  sort_records(sorted);
  std::vector<AggregateRow> rows;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].method == sorted[i].method &&
           sorted[j].dataset == sorted[i].dataset && sorted[j].c == sorted[i].c) {
      ++j;
    }
    AggregateRow row{sorted[i].method, sorted[i].dataset, sorted[i].c, sorted[i].param_count, 0, 0,
                     {}, {}, {}, {}, {}};
    std::vector<double> hv_mcr, hv_ce, d_mcr, d_ce;
    std::vector<std::vector<double>> task_mcr;
    for (std::size_t k = i; k < j; ++k) {
      const auto& r = sorted[k];
      if (!r.ok()) {
        ++row.failed;
        continue;
      }
      hv_mcr.push_back(r.hv_mcr);
      hv_ce.push_back(r.hv_ce);
      d_mcr.push_back(r.delta_st_mcr);
      d_ce.push_back(r.delta_st_ce);
      task_mcr.resize(std::max(task_mcr.size(), r.mcr.size()));
      for (std::size_t t = 0; t < r.mcr.size(); ++t) task_mcr[t].push_back(r.mcr[t]);
    }
    row.seeds = hv_mcr.size();
    row.hv_mcr = mean_std(hv_mcr);
    row.hv_ce = mean_std(hv_ce);
    row.delta_st_mcr = mean_std(d_mcr);
    row.delta_st_ce = mean_std(d_ce);
    for (const auto& t : task_mcr) row.mcr.push_back(mean_std(t));
    rows.push_back(std::move(row));
    i = j;
  }
  return rows;
}

ad::NetworkSpec network_spec(const ExperimentPlan& plan, double c, std::size_t input_dim) {
  ad::NetworkSpec spec;
  spec.input_dim = input_dim;
  spec.trunk_widths = plan.trunk_widths;
  spec.width_multiplier = c;
  spec.task_count = 2;
  spec.classes_per_task = dataset_config(plan.dataset).classes_per_task;
  spec.validate();
  return spec;
}

MethodConfigs select_configs(const ExperimentPlan& plan, MethodKind method, double c,
                             const problems::GlyphDataset& data, const SearchLog& log) {
  MethodConfigs out{method, {}};
  const auto spec = network_spec(plan, c, data.config.feature_dim());
  const std::size_t tasks = method == MethodKind::single_task ? spec.task_count : 1;
  for (std::size_t t = 0; t < tasks; ++t) {
    auto base = fixed_config(plan, method);
    base.task = t;
    if (plan.hpo == HpoMode::none) {
      out.configs.push_back(base);
      continue;
    }
    hpo::SearchRequest req;
    base.seed = plan.hpo_seed;
    req.base = base;
    req.mode = plan.hpo == HpoMode::grid ? hpo::SearchMode::grid : hpo::SearchMode::random;
    req.budget = plan.budget;
    req.sample_seed = plan.hpo_seed;
    req.ref = plan.ref;
    req.eval_rays = eval_rays(plan);
    const auto result = hpo::run_search(req, spec, data.train, data.validation,
                                        {plan.jobs, plan.record_wall_time});
    if (log) log(method, c, method == MethodKind::single_task ? static_cast<int>(t) : -1, result);
    out.configs.push_back(result.best_trial().solver);
  }
  return out;
}

ResultRecord run_cell(const ExperimentPlan& plan, const MethodConfigs& configs, double c,
                      std::uint64_t seed, const problems::GlyphDataset& data) {
  const auto spec = network_spec(plan, c, data.config.feature_dim());
  ResultRecord rec;
  rec.method = solvers::to_string(configs.method);
  rec.dataset = plan.dataset;
  rec.seed = seed;
  rec.c = c;
  rec.param_count = method_param_count(spec, configs.configs.front());

  std::vector<solvers::SolverConfig> cfgs = configs.configs;
  for (auto& cfg : cfgs) cfg.seed = seed;
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    rec.provenance += (i ? " | " : "") + cfgs[i].describe();
  }
  try {
    std::vector<solvers::EvalPoint> points;
    if (configs.method == MethodKind::single_task) {
      solvers::SingleTaskModels models;
      for (std::size_t t = 0; t < spec.task_count; ++t) {
        const auto& cfg = cfgs.at(cfgs.size() == 1 ? 0 : t);
        models.models.push_back(solvers::train_single_task(t, spec, data.train, cfg));
      }
      points.push_back(solvers::evaluate(models, data.test));
    } else {
      const auto rays = eval_rays(plan);
      const auto model = solvers::train_method(cfgs.front(), spec, data.train);
      points = solvers::evaluate_method(model, data.test, rays);
    }
    const std::size_t J = points.front().mcr.size();
    rec.mcr.assign(J, 0.0);
    rec.ce.assign(J, 0.0);
    for (const auto& p : points) {
      for (std::size_t j = 0; j < J; ++j) {
        rec.mcr[j] += p.mcr[j] / static_cast<double>(points.size());
        rec.ce[j] += p.ce[j] / static_cast<double>(points.size());
      }
    }
    rec.front_mcr = solvers::mcr_points(points);
    rec.hv_mcr = core::hypervolume(rec.front_mcr, plan.ref);
    rec.hv_ce = core::hypervolume(solvers::ce_points(points), plan.ref);
  } catch (const std::exception& e) {
    rec.status = "failed";
    rec.provenance += " error=" + std::string(e.what());
    std::cerr << "warning: " << rec.method << " c=" << c << " seed=" << seed
              << " failed and is excluded from aggregates: " << e.what() << "\n";
  }
  return rec;
}

void assign_delta_st(std::vector<ResultRecord>& records,
                     const std::map<double, std::pair<double, double>>& st_reference,
                     std::ostream* paired_log) {
  const std::string st = solvers::to_string(MethodKind::single_task);
  std::map<std::pair<std::string, double>, std::pair<std::vector<double>, std::vector<double>>> st_hv;
  for (const auto& r : records) {
    if (r.method == st && r.ok()) {
      auto& e = st_hv[{r.dataset, r.c}];
      e.first.push_back(r.hv_mcr);
      e.second.push_back(r.hv_ce);
    }
  }
  for (auto& r : records) {
    double ref_mcr = 0.0, ref_ce = 0.0;
    if (const auto it = st_hv.find({r.dataset, r.c}); it != st_hv.end()) {
      ref_mcr = mean_std(it->second.first).mean;
      ref_ce = mean_std(it->second.second).mean;
    } else if (const auto ext = st_reference.find(r.c); ext != st_reference.end()) {
      std::tie(ref_mcr, ref_ce) = ext->second;
    } else {
      r.delta_st_mcr = r.delta_st_ce = 0.0;
      continue;
    }
    if (!r.ok()) continue;
    r.delta_st_mcr = core::delta_st(ref_mcr, r.hv_mcr);
    r.delta_st_ce = core::delta_st(ref_ce, r.hv_ce);
  }
  if (paired_log == nullptr) return;
  for (const auto& r : records) {
    if (r.method == st || !r.ok()) continue;
    for (const auto& s : records) {
      if (s.method == st && s.ok() && s.dataset == r.dataset && s.c == r.c && s.seed == r.seed) {
        *paired_log << "paired delta_st " << r.method << " c=" << r.c << " seed=" << r.seed
                    << ": " << core::delta_st(s.hv_mcr, r.hv_mcr) << "\n";
      }
    }
  }
}

std::vector<ResultRecord> run_final(const ExperimentPlan& plan, const SearchLog& log,
                                    const std::map<double, std::pair<double, double>>& st_reference) {
  plan.validate();
  const auto data = problems::generate_glyph_dataset(dataset_config(plan.dataset), plan.data_seed);

  std::vector<std::pair<double, MethodConfigs>> selected;
  for (double c : plan.capacities) {
    for (auto m : plan.methods) selected.emplace_back(c, select_configs(plan, m, c, data, log));
  }
  const std::size_t per_cell = plan.seeds.size();
  std::vector<ResultRecord> records(selected.size() * per_cell);
  parallel_for(records.size(), plan.jobs, [&](std::size_t i) {
    const auto& [c, configs] = selected[i / per_cell];
    records[i] = run_cell(plan, configs, c, plan.seeds[i % per_cell], data);
  });
  assign_delta_st(records, st_reference, &std::cerr);
  sort_records(records);
  return records;
}

AblationTable ablation_from_records(std::vector<ResultRecord> records) {
  sort_records(records);
  AblationTable table;
  for (auto& row : aggregate(records)) {
    auto it = std::find_if(table.rows.begin(), table.rows.end(),
                           [&](const AblationRow& r) { return r.c == row.c; });
    if (it == table.rows.end()) {
      table.rows.push_back({row.c, {}});
      it = std::prev(table.rows.end());
    }
    it->methods[row.method] = row;
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const AblationRow& a, const AblationRow& b) { return a.c < b.c; });
  table.records = std::move(records);
  return table;
}

AblationTable run_capacity_ablation(const ExperimentPlan& plan, const SearchLog& log) {
  auto has = [&](MethodKind m) {
    return std::find(plan.methods.begin(), plan.methods.end(), m) != plan.methods.end();
  };
  if (!has(MethodKind::single_task) || !has(MethodKind::uniform)) {
    throw std::invalid_argument("capacity ablation needs single_task and uniform in the method list");
  }
  return ablation_from_records(run_final(plan, log));
}

}  // namespace moobench::harness
