#include "moobench/core/hypervolume.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace moobench::core {
namespace {

std::vector<ObjectiveVector> clip_to_reference(std::span<const ObjectiveVector> points,
                                               std::span<const double> ref) {
  require_finite(ref, "hypervolume reference");
  std::vector<ObjectiveVector> clipped;
  clipped.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != ref.size()) {
      throw std::invalid_argument("hypervolume: point dimension " + std::to_string(p.size()) +
                                  " does not match reference dimension " +
                                  std::to_string(ref.size()));
    }
    require_finite(p, "hypervolume point");
    ObjectiveVector q(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) q[j] = std::min(p[j], ref[j]);
    clipped.push_back(std::move(q));
  }
  return clipped;
}

}  // namespace

double hypervolume_exact_2d(std::span<const ObjectiveVector> points, std::span<const double> ref) {
  if (ref.size() != 2) {
    throw std::invalid_argument(
        "hypervolume_exact_2d: exact computation supports two objectives only; use "
        "hypervolume_mc for J = " +
        std::to_string(ref.size()));
  }
  auto pts = clip_to_reference(points, ref);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });

  double area = 0.0;
  double best_y = ref[1];
  for (const auto& p : pts) {
    if (p[1] < best_y) {
      area += (ref[0] - p[0]) * (best_y - p[1]);
      best_y = p[1];
    }
  }
  return area;
}

double hypervolume_mc(std::span<const ObjectiveVector> points, std::span<const double> ref,
                      std::uint64_t sample_count, std::uint64_t seed) {
  if (sample_count == 0) throw std::invalid_argument("hypervolume_mc: sample_count must be >= 1");
  auto pts = clip_to_reference(points, ref);
  if (pts.empty()) return 0.0;

  const std::size_t dim = ref.size();
  ObjectiveVector lower(ref.begin(), ref.end());
  for (const auto& p : pts) {
    for (std::size_t j = 0; j < dim; ++j) lower[j] = std::min(lower[j], p[j]);
  }
  double box = 1.0;
  for (std::size_t j = 0; j < dim; ++j) box *= ref[j] - lower[j];
  if (box <= 0.0) return 0.0;

  // dominated points never change the union
  const Front front = nondominated_filter(pts);

  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> axes;
  axes.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) axes.emplace_back(lower[j], ref[j]);

  ObjectiveVector sample(dim);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < sample_count; ++s) {
    for (std::size_t j = 0; j < dim; ++j) sample[j] = axes[j](rng);
    for (const auto& p : front) {
      bool covered = true;
      for (std::size_t j = 0; j < dim && covered; ++j) covered = p[j] <= sample[j];
      if (covered) {
        ++hits;
        break;
      }
    }
  }
  return box * static_cast<double>(hits) / static_cast<double>(sample_count);
}

double hypervolume(std::span<const ObjectiveVector> points, std::span<const double> ref,
                   std::uint64_t mc_samples, std::uint64_t mc_seed) {
  if (ref.size() == 2) return hypervolume_exact_2d(points, ref);
  if (ref.size() == 1) {
    double best = ref[0];
    for (const auto& p : points) {
      if (p.size() != 1) throw std::invalid_argument("hypervolume: dimension mismatch");
      require_finite(p, "hypervolume");
      best = std::min(best, p[0]);
    }
    return ref[0] - best;
  }
  return hypervolume_mc(points, ref, mc_samples, mc_seed);
}

}  // namespace moobench::core
