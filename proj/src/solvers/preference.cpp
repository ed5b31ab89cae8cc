#include "moobench/solvers/preference.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace moobench::solvers {

void validate_ray(std::span<const double> ray) {
  if (ray.empty()) throw std::invalid_argument("preference ray is empty");
  double total = 0.0;
  for (double w : ray) {
    if (!(w >= 0.0)) throw std::invalid_argument("preference ray has a negative or NaN weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("preference ray sums to " + std::to_string(total) + ", not 1");
  }
}

PreferenceRay sample_preference(double alpha, std::size_t task_count, std::mt19937_64& rng) {
  if (!(alpha > 0.0)) throw std::invalid_argument("sample_preference: alpha must be positive");
  if (task_count == 0) throw std::invalid_argument("sample_preference: task_count must be positive");
  std::gamma_distribution<double> gamma(alpha, 1.0);
  PreferenceRay ray(task_count);
  double total = 0.0;
  // tiny alpha can underflow every draw to zero; redraw in that case
  do {
    total = 0.0;
    for (auto& w : ray) {
      w = gamma(rng);
      total += w;
    }
  } while (!(total > 0.0));
  for (auto& w : ray) w /= total;
  return ray;
}

PreferenceRay sample_preference(double alpha, std::size_t task_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_preference(alpha, task_count, rng);
}

std::vector<PreferenceRay> evenly_spaced_rays(std::size_t task_count, std::size_t count) {
  if (task_count == 0) throw std::invalid_argument("evenly_spaced_rays: task_count must be positive");
  if (task_count == 1) return {PreferenceRay{1.0}};
  if (count < 2) throw std::invalid_argument("evenly_spaced_rays: need at least two rays");
  const std::size_t resolution = count - 1;
  std::vector<PreferenceRay> rays;
  std::vector<std::size_t> parts(task_count, 0);
  // enumerate compositions of `resolution` into task_count parts, first coordinate descending
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t index, std::size_t left) {
    if (index + 1 == task_count) {
      parts[index] = left;
      PreferenceRay ray(task_count);
      for (std::size_t j = 0; j < task_count; ++j)
        ray[j] = static_cast<double>(parts[j]) / static_cast<double>(resolution);
      rays.push_back(std::move(ray));
      return;
    }
    for (std::size_t v = left + 1; v-- > 0;) {
      parts[index] = v;
      recurse(index + 1, left - v);
    }
  };
  recurse(0, resolution);
  return rays;
}

double cosmos_loss(std::span<const double> losses, std::span<const double> ray, double lambda) {
  if (losses.size() != ray.size()) throw std::invalid_argument("cosmos_loss: size mismatch");
  const double weighted = std::inner_product(ray.begin(), ray.end(), losses.begin(), 0.0);
  const double loss_norm = std::sqrt(std::inner_product(losses.begin(), losses.end(), losses.begin(), 0.0));
  if (lambda == 0.0 || loss_norm == 0.0) return weighted;
  const double ray_norm = std::sqrt(std::inner_product(ray.begin(), ray.end(), ray.begin(), 0.0));
  return weighted - lambda * weighted / (ray_norm * loss_norm);
}

ad::Var cosmos_loss(std::span<const ad::Var> losses, std::span<const double> ray, double lambda) {
  if (losses.size() != ray.size()) throw std::invalid_argument("cosmos_loss: size mismatch");
  ad::Var weighted = ad::weighted_sum(losses, ray);
  double loss_norm2 = 0.0;
  for (auto l : losses) loss_norm2 += l.value().item() * l.value().item();
  if (lambda == 0.0 || loss_norm2 == 0.0) return weighted;

  std::vector<ad::Var> squares;
  for (auto l : losses) squares.push_back(ad::mul(l, l));
  const std::vector<double> ones(losses.size(), 1.0);
  const ad::Var loss_norm = ad::sqrt(ad::weighted_sum(squares, ones));
  const double ray_norm = std::sqrt(std::inner_product(ray.begin(), ray.end(), ray.begin(), 0.0));
  const ad::Var cosine = ad::scale(ad::div(weighted, loss_norm), 1.0 / ray_norm);
  return ad::sub(weighted, ad::scale(cosine, lambda));
}

}  // namespace moobench::solvers
