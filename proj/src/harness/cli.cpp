#include "moobench/harness/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "moobench/harness/report.hpp"
#include "moobench/harness/selftest.hpp"

namespace moobench::harness {
namespace {

// Raised for bad option values found after parsing; maps to exit code 1.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExperimentOptions {
  std::string plan_file, dataset, methods, seeds, capacities, hpo, scheduler, ray, ref_point,
      trunk_widths, out, format;
  std::optional<std::uint64_t> seed, data_seed, hpo_seed;
  std::optional<std::size_t> epochs, batch_size, budget, eval_rays, jobs;
  std::optional<double> lr, wd;
  bool wall_time = false;
};

void add_experiment_options(CLI::App* app, ExperimentOptions& o) {
  app->add_option("--plan", o.plan_file, "plan file (key = value lines); flags override it");
  app->add_option("--dataset", o.dataset, "glyphs or glyphs-small");
  app->add_option("--data-seed", o.data_seed, "dataset generation seed");
  app->add_option("--method", o.methods,
                  "comma list of single_task, uniform, fixed_weight, mgda, cosmos, phn, pmtl");
  app->add_option("--seed", o.seed, "single training seed");
  app->add_option("--seeds", o.seeds, "seed count (0..n-1) or comma list");
  app->add_option("--c", o.capacities, "comma list of width multipliers");
  app->add_option("--trunk-widths", o.trunk_widths, "comma list of base trunk widths");
  app->add_option("--epochs", o.epochs);
  app->add_option("--batch-size", o.batch_size);
  app->add_option("--hpo", o.hpo, "random, grid or none");
  app->add_option("--budget", o.budget, "random-search budget");
  app->add_option("--hpo-seed", o.hpo_seed);
  app->add_option("--lr", o.lr, "learning rate without HPO");
  app->add_option("--wd", o.wd, "weight decay without HPO");
  app->add_option("--scheduler", o.scheduler, "cosine, step or none (without HPO)");
  app->add_option("--ray", o.ray, "fixed_weight preference, e.g. 0.3,0.7");
  app->add_option("--ref-point", o.ref_point, "hypervolume reference, default 1,1");
  app->add_option("--eval-rays", o.eval_rays, "evaluation rays for conditioned methods");
  app->add_option("--jobs", o.jobs, "concurrent training runs");
  app->add_option("--out", o.out, "output file");
  app->add_option("--format", o.format, "csv, json, plotdata or table");
}

ExperimentPlan build_plan(const ExperimentOptions& o, ExperimentPlan plan) {
  try {
    if (!o.plan_file.empty()) plan = load_plan(o.plan_file, plan);
    auto set = [&](const char* key, const std::string& v) {
      if (!v.empty()) set_plan_value(plan, key, v);
    };
    set("dataset", o.dataset);
    set("methods", o.methods);
    set("capacities", o.capacities);
    set("trunk_widths", o.trunk_widths);
    set("hpo", o.hpo);
    set("scheduler", o.scheduler);
    set("ray", o.ray);
    set("ref_point", o.ref_point);
    if (o.seed && !o.seeds.empty()) throw std::invalid_argument("use either --seed or --seeds");
    if (o.seed) plan.seeds = {*o.seed};
    if (!o.seeds.empty()) plan.seeds = parse_seeds(o.seeds);
    if (o.data_seed) plan.data_seed = *o.data_seed;
    if (o.hpo_seed) plan.hpo_seed = *o.hpo_seed;
    if (o.epochs) plan.epochs = *o.epochs;
    if (o.batch_size) plan.batch_size = *o.batch_size;
    if (o.budget) plan.budget = *o.budget;
    if (o.eval_rays) plan.eval_rays = *o.eval_rays;
    if (o.jobs) plan.jobs = *o.jobs;
    if (o.lr) plan.lr = *o.lr;
    if (o.wd) plan.weight_decay = *o.wd;
    plan.record_wall_time = o.wall_time;
    plan.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return plan;
}

ReportFormat format_or(const std::string& name, ReportFormat fallback) {
  if (name.empty()) return fallback;
  try {
    return parse_report_format(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void print_summary(std::ostream& out, const std::vector<ResultRecord>& records) {
  for (const auto& a : aggregate(records)) {
    out << a.method << " c=" << a.c << " seeds=" << a.seeds << " hv_mcr=" << a.hv_mcr.mean
        << " +- " << a.hv_mcr.std << " delta_st=" << a.delta_st_mcr.mean << " +- "
        << a.delta_st_mcr.std;
    if (a.failed) out << " failed=" << a.failed;
    out << "\n";
  }
}

std::string task_path(const std::string& path, int task) {
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + ".task" + std::to_string(task) +
                             p.extension().string()))
      .string();
}

int cmd_hpo(const ExperimentOptions& o, std::ostream& out) {
  ExperimentPlan base;
  base.capacities = {1.0};
  base.hpo = HpoMode::random;
  ExperimentPlan plan = build_plan(o, base);
  if (plan.methods.size() != 1) throw UsageError("hpo searches one --method at a time");
  if (plan.hpo == HpoMode::none) throw UsageError("hpo needs --hpo random or grid");
  if (plan.capacities.size() != 1) throw UsageError("hpo takes a single --c value");

  const auto method = plan.methods.front();
  const auto data = problems::generate_glyph_dataset(dataset_config(plan.dataset), plan.data_seed);
  const auto space = hpo::method_specific_space(method);
  select_configs(plan, method, plan.capacities.front(), data,
                 [&](solvers::MethodKind, double, int task, const hpo::SearchResult& result) {
                   if (!o.out.empty()) {
                     const auto path = task < 0 ? o.out : task_path(o.out, task);
                     std::ofstream f(path, std::ios::binary);
                     if (!f) throw std::runtime_error("cannot write trial log " + path);
                     hpo::write_trial_log(f, result, space);
                   } else {
                     hpo::write_trial_log(out, result, space);
                   }
                   std::size_t failed = 0;
                   for (const auto& t : result.trials) failed += t.status == hpo::TrialStatus::failed;
                   const auto& best = result.best_trial();
                   out << "best" << (task < 0 ? "" : " task" + std::to_string(task)) << ": config "
                       << best.config.index << " " << best.solver.describe()
                       << " val_hv_ce=" << best.val_hv_ce << " val_hv_mcr=" << best.val_hv_mcr
                       << " (" << result.trials.size() << " trials, " << failed << " failed)\n";
                   if (!result.note.empty()) out << "note: " << result.note << "\n";
                 });
  return 0;
}

int cmd_run(const ExperimentOptions& o, std::ostream& out) {
  ExperimentPlan base;
  base.capacities = {1.0};
  const ExperimentPlan plan = build_plan(o, base);
  const auto format = format_or(o.format, ReportFormat::csv);
  const auto records = run_final(plan);
  if (o.out.empty()) {
    emit_report(records, format, out);
  } else {
    emit_report(records, format, o.out);
    print_summary(out, records);
  }
  return 0;
}

int cmd_ablate(const ExperimentOptions& o, std::ostream& out) {
  const ExperimentPlan plan = build_plan(o, ExperimentPlan{});
  const auto format = format_or(o.format, ReportFormat::csv);
  AblationTable table;
  try {
    table = run_capacity_ablation(plan);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_ablation_table(out, table);
  if (!o.out.empty()) emit_report(table.records, format, o.out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gradient-based multi-objective optimization benchmark", "moobench"};
  app.require_subcommand(1);

  ExperimentOptions hpo_opts, run_opts, ablate_opts;
  auto* hpo_cmd = app.add_subcommand("hpo", "hyperparameter search for one method");
  add_experiment_options(hpo_cmd, hpo_opts);
  hpo_cmd->add_flag("--wall-time", hpo_opts.wall_time, "record trial wall time in the log");
  auto* run_cmd = app.add_subcommand("run", "final multi-seed runs on the test split");
  add_experiment_options(run_cmd, run_opts);
  auto* ablate_cmd = app.add_subcommand("ablate", "capacity ablation over width multipliers");
  add_experiment_options(ablate_cmd, ablate_opts);

  std::string report_in, report_methods, report_format, report_out;
  auto* report_cmd = app.add_subcommand("report", "re-render a CSV result file");
  report_cmd->add_option("input", report_in, "CSV written by run or ablate")->required();
  report_cmd->add_option("--method", report_methods, "comma list of methods to keep");
  report_cmd->add_option("--format", report_format, "csv, json, plotdata or table");
  report_cmd->add_option("--out", report_out, "output file (default stdout)");

  auto* selftest_cmd = app.add_subcommand("selftest", "run the oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*selftest_cmd) return run_selftest(out) ? 0 : 2;
    if (*hpo_cmd) return cmd_hpo(hpo_opts, out);
    if (*run_cmd) return cmd_run(run_opts, out);
    if (*ablate_cmd) return cmd_ablate(ablate_opts, out);
    if (*report_cmd) {
      const auto format = format_or(report_format, ReportFormat::table);
      std::vector<std::string> methods;
      std::stringstream ss(report_methods);
      for (std::string m; std::getline(ss, m, ',');) {
        if (!m.empty()) methods.push_back(m);
      }
      if (!report_methods.empty() && methods.empty()) throw UsageError("empty --method filter");
      const auto records = read_records_csv(report_in);
      if (report_out.empty()) {
        emit_report(records, format, out, methods);
      } else {
        emit_report(records, format, report_out, methods);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace moobench::harness
