#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "moobench/harness/plan.hpp"
#include "moobench/solvers/method.hpp"

namespace moobench::harness {

/// One (method, dataset, c, seed) outcome on the test split. Methods that
/// produce several points report the per-task mean over their points; HV is
/// computed over all of them.
struct ResultRecord {
  std::string method;
  std::string dataset;
  std::uint64_t seed = 0;
  double c = 1.0;
  std::size_t param_count = 0;
  std::vector<double> mcr;
  std::vector<double> ce;
  double hv_mcr = 0.0;
  double hv_ce = 0.0;
  double delta_st_mcr = 0.0;
  double delta_st_ce = 0.0;
  std::string status = "ok";  ///< "ok" or "failed"
  std::vector<core::ObjectiveVector> front_mcr;
  std::string provenance;

  bool ok() const { return status == "ok"; }
  bool operator==(const ResultRecord&) const = default;
};

struct Stat {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation, 0 for a single value
};
Stat mean_std(const std::vector<double>& values);

/// Mean and spread over the successful seeds of one (method, dataset, c).
struct AggregateRow {
  std::string method;
  std::string dataset;
  double c = 1.0;
  std::size_t param_count = 0;
  std::size_t seeds = 0;
  std::size_t failed = 0;
  Stat hv_mcr, hv_ce, delta_st_mcr, delta_st_ce;
  std::vector<Stat> mcr;  ///< per task
};

std::vector<AggregateRow> aggregate(const std::vector<ResultRecord>& records);

/// Orders by (method, dataset, c, seed).
void sort_records(std::vector<ResultRecord>& records);

/// Network for capacity c on the plan's dataset.
ad::NetworkSpec network_spec(const ExperimentPlan& plan, double c, std::size_t input_dim);

/// Training configurations for one method at one capacity: the plan's fixed
/// settings, or the HPO winners (Single Task gets one search per task).
struct MethodConfigs {
  solvers::MethodKind method;
  std::vector<solvers::SolverConfig> configs;  ///< one per task for single_task
};

/// Called with each finished search (method, c, task or -1, result).
using SearchLog = std::function<void(solvers::MethodKind, double, int, const hpo::SearchResult&)>;

MethodConfigs select_configs(const ExperimentPlan& plan, solvers::MethodKind method, double c,
                             const problems::GlyphDataset& data, const SearchLog& log = {});

/// Trains on the train split only and scores on the test split.
ResultRecord run_cell(const ExperimentPlan& plan, const MethodConfigs& configs, double c,
                      std::uint64_t seed, const problems::GlyphDataset& data);

/// Every (method, c, seed) of the plan. ΔST uses the mean Single Task HV of
/// the same c; when the plan has no Single Task, `st_reference` (keyed by c,
/// holding MCR and CE HV) may supply it, otherwise ΔST stays 0.
std::vector<ResultRecord> run_final(const ExperimentPlan& plan, const SearchLog& log = {},
                                    const std::map<double, std::pair<double, double>>& st_reference = {});

/// Fills ΔST of every record from the Single Task records and logs the
/// per-seed paired gaps to `paired_log` when given.
void assign_delta_st(std::vector<ResultRecord>& records,
                     const std::map<double, std::pair<double, double>>& st_reference = {},
                     std::ostream* paired_log = nullptr);

/// One row per c with the mean HV and ΔST of every method.
struct AblationRow {
  double c = 1.0;
  std::map<std::string, AggregateRow> methods;
};

struct AblationTable {
  std::vector<AblationRow> rows;
  std::vector<ResultRecord> records;
};

/// Requires single_task and uniform in the plan.
AblationTable run_capacity_ablation(const ExperimentPlan& plan, const SearchLog& log = {});
AblationTable ablation_from_records(std::vector<ResultRecord> records);

}  // namespace moobench::harness
