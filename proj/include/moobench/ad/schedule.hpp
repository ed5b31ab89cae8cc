#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace moobench::ad {

enum class ScheduleKind { cosine, step, none };

std::string to_string(ScheduleKind kind);
/// Accepts "cosine", "step" and "none". Throws std::invalid_argument otherwise.
ScheduleKind parse_schedule(const std::string& name);

/// Epoch-granular learning-rate schedule.
struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::none;
  double base_lr = 1e-3;
  double min_lr = 1e-6;
  std::vector<std::size_t> milestones{33, 66};
  double multiplier = 0.1;
  std::size_t total_epochs = 100;

  /// Schedule for a run of `epochs` epochs. The step milestones keep their
  /// relative position (33% and 66% of the run), which gives {33, 66} for 100.
  static ScheduleSpec for_run(ScheduleKind kind, double base_lr, std::size_t epochs);
};

/// Learning rate used throughout `epoch` (0-based).
///   none:   base_lr
///   cosine: min_lr + (base_lr - min_lr) * (1 + cos(pi * epoch / (total - 1))) / 2
///   step:   base_lr * multiplier^(milestones <= epoch)
/// Throws std::out_of_range for epoch >= total_epochs.
double lr_at(const ScheduleSpec& schedule, std::size_t epoch);

}  // namespace moobench::ad
