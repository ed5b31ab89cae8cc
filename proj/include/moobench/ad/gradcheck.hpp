#pragma once

#include <functional>
#include <span>
#include <vector>

#include "moobench/ad/network.hpp"

namespace moobench::ad {

/// Largest relative error between `analytic` and central differences of `f`
/// at `x`, using max(|a|, |n|, 1e-8) as denominator. eps must lie in (0, 1e-2].
double finite_diff_check(const std::function<double(std::span<const double>)>& f,
                         std::span<const double> analytic, std::span<const double> x, double eps);

/// Checks the gradient of the uniformly weighted task-loss sum over every
/// parameter of the network.
double finite_diff_check(const NetworkSpec& spec, const ParameterSet& params, const Batch& batch,
                         double eps);

}  // namespace moobench::ad
