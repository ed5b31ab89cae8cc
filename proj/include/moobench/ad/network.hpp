#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "moobench/ad/tape.hpp"
#include "moobench/ad/tensor.hpp"

namespace moobench::ad {

/// Dense multi-task architecture: a ReLU trunk shared by all tasks followed by
/// one head per task. Trunk widths scale with `width_multiplier`; head widths
/// do not, so the multiplier only changes the shared parameters.
struct NetworkSpec {
  std::size_t input_dim = 0;
  std::vector<std::size_t> trunk_widths;
  double width_multiplier = 1.0;
  std::vector<std::size_t> head_widths;
  std::size_t task_count = 2;
  std::size_t classes_per_task = 10;

  void validate() const;
  std::vector<std::size_t> realized_trunk_widths() const;
  std::size_t trunk_output_dim() const;
  bool operator==(const NetworkSpec&) const = default;
};

/// max(1, round-half-up(base * multiplier)).
std::size_t realized_width(std::size_t base, double multiplier);

/// Parameters split into the shared trunk and one block per task head.
/// Each dense layer contributes a weight (in x out) followed by a bias (out).
struct ParameterSet {
  std::vector<Tensor> shared;
  std::vector<std::vector<Tensor>> per_task;

  std::vector<Tensor*> tensors();
  std::vector<const Tensor*> tensors() const;
  std::size_t scalar_count() const;
  std::vector<double> flatten() const;
  void assign_flat(std::span<const double> values);
  bool operator==(const ParameterSet&) const = default;
};

ParameterSet zeros_like(const ParameterSet& params);

/// PyTorch-style default init: U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases.
ParameterSet init_parameters(const NetworkSpec& spec, std::uint64_t seed);
ParameterSet zero_parameters(const NetworkSpec& spec);

/// Total scalar parameters across the trunk and all heads.
std::size_t param_count(const NetworkSpec& spec);

/// ParameterSet mirrored onto tape nodes.
struct ParameterVars {
  std::vector<Var> shared;
  std::vector<std::vector<Var>> per_task;
};

ParameterVars bind(Tape& tape, const ParameterSet& params);
/// Reads the gradients of bound parameters after Tape::backward.
ParameterSet gradients_of(const ParameterVars& vars);

/// One minibatch: row-major inputs plus one label vector per task.
struct Batch {
  Tensor inputs;
  std::vector<std::vector<int>> labels;
  std::size_t index = 0;

  std::size_t size() const { return inputs.rows(); }
};

/// Records the network on `tape`; the trunk is evaluated once and feeds every head.
std::vector<Var> forward(const NetworkSpec& spec, const ParameterVars& params, Var inputs);
/// Tape-free convenience wrapper returning one (batch x classes) logits block per task.
std::vector<Tensor> forward(const NetworkSpec& spec, const ParameterSet& params,
                            const Tensor& inputs);

/// Mean cross-entropy per task recorded on the tape.
std::vector<Var> task_losses(const NetworkSpec& spec, const ParameterVars& params, Var inputs,
                             const Batch& batch);

/// Raised when a loss or gradient becomes NaN or infinite.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t batch_index)
      : std::runtime_error(what + " (batch " + std::to_string(batch_index) + ")"),
        batch_index_(batch_index) {}
  std::size_t batch_index() const { return batch_index_; }

 private:
  std::size_t batch_index_;
};

struct PerTaskShared {};
struct Scalarized {
  std::vector<double> weights;
};
using GradientMode = std::variant<PerTaskShared, Scalarized>;

struct LossGrads {
  std::vector<double> losses;
  /// J gradient sets in PerTaskShared mode (head k of set j is zero for k != j),
  /// a single gradient of Σ w_j L_j in Scalarized mode.
  std::vector<ParameterSet> grads;
};

LossGrads loss_and_grads(const NetworkSpec& spec, const ParameterSet& params, const Batch& batch,
                         const GradientMode& mode);

}  // namespace moobench::ad
