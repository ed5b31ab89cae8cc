#include "moobench/core/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace moobench::core {

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dominates: dimension mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

Front nondominated_filter(std::span<const ObjectiveVector> points) {
  Front front;
  if (points.empty()) return front;
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("nondominated_filter: mixed dimensions");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    bool keep = true;
    for (std::size_t j = 0; j < points.size() && keep; ++j) {
      if (j == i) continue;
      if (dominates(points[j], p)) keep = false;
      // duplicates: only the first occurrence survives
      if (j < i && points[j] == p) keep = false;
    }
    if (keep) front.push_back(p);
  }
  return front;
}

void require_finite(std::span<const double> values, const char* what) {
  if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
}

}  // namespace moobench::core
