#include "moobench/hpo/search_space.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace moobench::hpo {
namespace {

template <typename T>
void check_dimension(const std::vector<T>& values, const char* name, bool required) {
  if (required && values.empty()) {
    throw std::invalid_argument(std::string("SearchSpace: no ") + name);
  }
  if (std::set<T>(values.begin(), values.end()).size() != values.size()) {
    throw std::invalid_argument(std::string("SearchSpace: duplicate ") + name);
  }
}

template <typename T>
std::vector<std::optional<T>> optional_axis(const std::vector<T>& values) {
  if (values.empty()) return {std::nullopt};
  return {values.begin(), values.end()};
}

}  // namespace

SearchSpace SearchSpace::base() {
  SearchSpace s;
  s.learning_rates = {1e-2, 7.5e-3, 5e-3, 2.5e-3, 1e-3, 7.5e-4, 5e-4, 2.5e-4, 1e-4};
  s.weight_decays = {1e-1, 7.5e-2, 5e-2, 2.5e-2, 1e-2, 7.5e-3, 5e-3,
                     2.5e-3, 1e-3, 7.5e-4, 5e-4, 2.5e-4, 1e-4};
  s.schedulers = {ad::ScheduleKind::cosine, ad::ScheduleKind::step, ad::ScheduleKind::none};
  return s;
}

std::size_t SearchSpace::size() const {
  auto n = [](std::size_t k) { return k == 0 ? std::size_t{1} : k; };
  return learning_rates.size() * weight_decays.size() * schedulers.size() *
         n(extension.norm_modes.size()) * n(extension.alphas.size()) * n(extension.lambdas.size());
}

void SearchSpace::validate() const {
  check_dimension(learning_rates, "learning rates", true);
  check_dimension(weight_decays, "weight decays", true);
  check_dimension(schedulers, "schedulers", true);
  check_dimension(extension.norm_modes, "norm modes", false);
  check_dimension(extension.alphas, "alphas", false);
  check_dimension(extension.lambdas, "lambdas", false);
  for (double v : learning_rates)
    if (!(v > 0.0)) throw std::invalid_argument("SearchSpace: learning rates must be positive");
  for (double v : weight_decays)
    if (!(v >= 0.0)) throw std::invalid_argument("SearchSpace: weight decays must be non-negative");
}

SearchSpace method_specific_space(solvers::MethodKind method) {
  using solvers::MethodKind;
  using solvers::NormMode;
  SearchSpace s = SearchSpace::base();
  switch (method) {
    case MethodKind::mgda:
      s.extension.norm_modes = {NormMode::l2, NormMode::loss, NormMode::loss_plus, NormMode::none};
      break;
    case MethodKind::cosmos:
      s.extension.alphas = {0.1, 0.2, 0.5, 1.0, 1.2, 1.5};
      s.extension.lambdas = {1.0, 2.0, 4.0, 8.0, 16.0};
      break;
    case MethodKind::phn:
      s.extension.alphas = {0.1, 0.2, 0.5, 1.0, 1.2, 1.5};
      s.extension.note = "internal solver fixed to ls; EPO not available";
      break;
    default:
      break;
  }
  return s;
}

solvers::SolverConfig TrialConfig::apply(solvers::SolverConfig base) const {
  base.lr = lr;
  base.weight_decay = weight_decay;
  base.schedule = scheduler;
  if (norm_mode) base.norm_mode = *norm_mode;
  if (alpha) base.alpha = *alpha;
  if (lambda) base.lambda = *lambda;
  return base;
}

std::vector<TrialConfig> enumerate_grid(const SearchSpace& space) {
  space.validate();
  std::vector<TrialConfig> out;
  out.reserve(space.size());
  for (double lr : space.learning_rates)
    for (double wd : space.weight_decays)
      for (auto sched : space.schedulers)
        for (auto norm : optional_axis(space.extension.norm_modes))
          for (auto alpha : optional_axis(space.extension.alphas))
            for (auto lambda : optional_axis(space.extension.lambdas))
              out.push_back({out.size(), lr, wd, sched, norm, alpha, lambda});
  return out;
}

std::vector<TrialConfig> sample_random(const SearchSpace& space, std::size_t budget,
                                       std::uint64_t seed) {
  auto grid = enumerate_grid(space);
  if (budget > grid.size()) {
    throw std::invalid_argument("sample_random: budget " + std::to_string(budget) +
                                " exceeds grid size " + std::to_string(grid.size()));
  }
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<TrialConfig> out;
  out.reserve(budget);
  for (std::size_t i = 0; i < budget; ++i) out.push_back(grid[order[i]]);
  return out;
}

}  // namespace moobench::hpo
