#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "moobench/core/pareto.hpp"
#include "moobench/hpo/search.hpp"
#include "moobench/problems/glyphs.hpp"
#include "moobench/solvers/config.hpp"

namespace moobench::harness {

enum class HpoMode { none, random, grid };
std::string to_string(HpoMode mode);
HpoMode parse_hpo_mode(const std::string& name);

/// Everything an experiment needs. Without HPO every method trains with
/// (lr, weight_decay, scheduler) plus its default method-specific settings.
struct ExperimentPlan {
  std::string dataset = "glyphs";
  std::uint64_t data_seed = 0;
  std::vector<solvers::MethodKind> methods{solvers::MethodKind::single_task,
                                           solvers::MethodKind::uniform};
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> capacities{0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<std::size_t> trunk_widths{32, 32};

  HpoMode hpo = HpoMode::none;
  std::size_t budget = 100;
  std::uint64_t hpo_seed = 0;

  std::size_t epochs = 15;
  std::size_t batch_size = 64;
  double lr = 1e-3;
  double weight_decay = 0.0;
  ad::ScheduleKind scheduler = ad::ScheduleKind::cosine;
  solvers::PreferenceRay ray;  ///< fixed_weight only

  core::ObjectiveVector ref{1.0, 1.0};
  std::size_t eval_rays = 11;
  std::size_t jobs = 1;
  bool record_wall_time = false;

  /// Throws std::invalid_argument on duplicate seeds, non-positive c, etc.
  void validate() const;
};

/// Dataset presets: "glyphs" (5400/600/1000) and "glyphs-small" (1200/300/400).
problems::MergedGlyphConfig dataset_config(const std::string& name);

/// key = value lines; '#' starts a comment. Keys are the ExperimentPlan field
/// names; lists are comma separated. Unknown keys are rejected.
ExperimentPlan parse_plan(std::istream& in, ExperimentPlan plan = {});
ExperimentPlan load_plan(const std::string& path, ExperimentPlan plan = {});
/// Applies one key/value pair; throws std::invalid_argument on unknown keys or bad values.
void set_plan_value(ExperimentPlan& plan, const std::string& key, const std::string& value);
void write_plan(std::ostream& out, const ExperimentPlan& plan);

/// "5" means seeds 0..4; "0,3,7" lists them.
std::vector<std::uint64_t> parse_seeds(const std::string& text);
std::vector<double> parse_doubles(const std::string& text);

}  // namespace moobench::harness
