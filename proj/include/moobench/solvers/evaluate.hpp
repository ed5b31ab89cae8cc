#pragma once

#include <span>
#include <vector>

#include "moobench/solvers/cosmos.hpp"
#include "moobench/solvers/phn.hpp"
#include "moobench/solvers/pmtl.hpp"

namespace moobench::solvers {

inline constexpr std::size_t kDefaultEvalRays = 11;

/// One model per task; task j is scored with model j.
struct SingleTaskModels {
  std::vector<MultiHeadModel> models;
};

/// Per-task misclassification rate (argmax, first maximum wins) and mean
/// cross-entropy of `logits` against the split labels.
EvalPoint score_logits(std::span<const ad::Tensor> logits, const problems::Split& split);

EvalPoint evaluate(const ad::NetworkSpec& spec, const ad::ParameterSet& params,
                   const problems::Split& split);
EvalPoint evaluate(const MultiHeadModel& model, const problems::Split& split);
EvalPoint evaluate(const SingleTaskModels& models, const problems::Split& split);

/// One point per ray; an empty ray list means kDefaultEvalRays evenly spaced rays.
std::vector<EvalPoint> evaluate(const CosmosModel& model, const problems::Split& split,
                                std::span<const PreferenceRay> rays = {});
std::vector<EvalPoint> evaluate(const HyperNetModel& model, const problems::Split& split,
                                std::span<const PreferenceRay> rays = {});
/// One point per trained model, tagged with its ray.
std::vector<EvalPoint> evaluate(const PmtlModels& models, const problems::Split& split);

/// Points of an EvalPoint collection as MCR or CE objective vectors.
std::vector<std::vector<double>> mcr_points(std::span<const EvalPoint> points);
std::vector<std::vector<double>> ce_points(std::span<const EvalPoint> points);

}  // namespace moobench::solvers
