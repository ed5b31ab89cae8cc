#pragma once

#include <span>
#include <vector>

namespace moobench::core {

/// A point in objective space. All objectives are minimized.
using ObjectiveVector = std::vector<double>;

/// A collection of mutually non-dominated objective vectors.
using Front = std::vector<ObjectiveVector>;

/// Pareto dominance under minimization: `a` is no worse than `b` in every
/// objective and strictly better in at least one.
///
/// Throws std::invalid_argument if the dimensions differ.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Returns the points not strictly dominated by any other point. Exact
/// duplicates collapse to their first occurrence; input order is kept.
Front nondominated_filter(std::span<const ObjectiveVector> points);

/// Throws std::invalid_argument unless every value is finite.
void require_finite(std::span<const double> values, const char* what);

}  // namespace moobench::core
