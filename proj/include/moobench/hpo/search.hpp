#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "moobench/core/pareto.hpp"
#include "moobench/hpo/search_space.hpp"
#include "moobench/problems/glyphs.hpp"
#include "moobench/solvers/method.hpp"

namespace moobench::hpo {

enum class TrialStatus { completed, failed };
std::string to_string(TrialStatus status);

struct Trial {
  TrialConfig config;
  solvers::SolverConfig solver;
  TrialStatus status = TrialStatus::failed;
  double val_hv_ce = 0.0;   ///< meaningful only when completed
  double val_hv_mcr = 0.0;  ///< meaningful only when completed
  std::optional<double> wall_seconds;
  std::string error;
};

/// Validation hypervolumes of one trained configuration.
struct TrialScore {
  double hv_ce = 0.0;
  double hv_mcr = 0.0;
};

/// Trains and scores one configuration; throwing marks the trial failed.
using TrialFn = std::function<TrialScore(const solvers::SolverConfig&)>;

struct SearchOptions {
  std::size_t jobs = 1;
  bool record_wall_time = false;
};

struct SearchResult {
  std::vector<Trial> trials;  ///< ordered by config index
  std::optional<std::size_t> best;  ///< position in `trials`
  std::string note;

  const Trial& best_trial() const;
};

/// Index of the completed trial with the largest CE-based HV; ties go to the
/// lower config index. Empty when every trial failed.
std::optional<std::size_t> select_best(const std::vector<Trial>& trials);

/// Runs `score` on every config (concurrently when jobs > 1) and selects the best.
SearchResult run_search(const std::vector<TrialConfig>& configs, const solvers::SolverConfig& base,
                        const TrialFn& score, const SearchOptions& options = {});

enum class SearchMode { random, grid };
std::string to_string(SearchMode mode);
SearchMode parse_search_mode(const std::string& name);

/// Validation HV of a method's points: the full objective vector, or only
/// task `task` when scoring a single-task model.
TrialScore score_points(const std::vector<solvers::EvalPoint>& points,
                        const core::ObjectiveVector& ref, std::optional<std::size_t> task = {});

struct SearchRequest {
  solvers::SolverConfig base;  ///< method and fixed settings; seed is the HPO seed
  SearchMode mode = SearchMode::random;
  std::size_t budget = 100;
  std::uint64_t sample_seed = 0;
  core::ObjectiveVector ref{1.0, 1.0};
  std::vector<solvers::PreferenceRay> eval_rays;
};

/// Trains each sampled configuration on `train` and scores it on `validation`.
/// Single-task searches score only base.task.
SearchResult run_search(const SearchRequest& request, const ad::NetworkSpec& spec,
                        const problems::Split& train, const problems::Split& validation,
                        const SearchOptions& options = {});

/// CSV trial log: config_index, method, lr, wd, scheduler, the extension
/// columns of `space`, status, val_hv_ce, val_hv_mcr, wall_seconds.
void write_trial_log(std::ostream& out, const SearchResult& result, const SearchSpace& space);

}  // namespace moobench::hpo
