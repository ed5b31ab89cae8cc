#include "moobench/ad/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace moobench::ad {

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::cosine: return "cosine";
    case ScheduleKind::step: return "step";
    case ScheduleKind::none: return "none";
  }
  return "none";
}

ScheduleKind parse_schedule(const std::string& name) {
  if (name == "cosine") return ScheduleKind::cosine;
  if (name == "step") return ScheduleKind::step;
  if (name == "none") return ScheduleKind::none;
  throw std::invalid_argument("unknown scheduler '" + name + "' (expected cosine, step or none)");
}

ScheduleSpec ScheduleSpec::for_run(ScheduleKind kind, double base_lr, std::size_t epochs) {
  ScheduleSpec s;
  s.kind = kind;
  s.base_lr = base_lr;
  s.total_epochs = epochs;
  s.milestones = {std::max<std::size_t>(1, epochs * 33 / 100),
                  std::max<std::size_t>(1, epochs * 66 / 100)};
  return s;
}

double lr_at(const ScheduleSpec& schedule, std::size_t epoch) {
  if (epoch >= schedule.total_epochs) {
    throw std::out_of_range("lr_at: epoch " + std::to_string(epoch) + " outside a " +
                            std::to_string(schedule.total_epochs) + "-epoch schedule");
  }
  switch (schedule.kind) {
    case ScheduleKind::none:
      return schedule.base_lr;
    case ScheduleKind::cosine: {
      if (schedule.total_epochs == 1) return schedule.base_lr;
      const double progress =
          static_cast<double>(epoch) / static_cast<double>(schedule.total_epochs - 1);
      return schedule.min_lr + 0.5 * (schedule.base_lr - schedule.min_lr) *
                                   (1.0 + std::cos(std::numbers::pi * progress));
    }
    case ScheduleKind::step: {
      double lr = schedule.base_lr;
      for (auto m : schedule.milestones)
        if (m <= epoch) lr *= schedule.multiplier;
      return lr;
    }
  }
  return schedule.base_lr;
}

}  // namespace moobench::ad
