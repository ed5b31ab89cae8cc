#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "moobench/ad/tensor.hpp"

namespace moobench::ad {

class Tape;

/// Handle to a node recorded on a Tape. Cheap to copy; valid while the tape lives.
struct Var {
  Tape* tape = nullptr;
  std::size_t id = 0;

  const Tensor& value() const;
  const Tensor& grad() const;
};

/// Reverse-mode tape over whole tensors.
///
/// Every operation appends a node holding its value and a closure that
/// pushes the node's gradient to its parents. backward() seeds a scalar root
/// with 1 and walks the tape in reverse, so gradients accumulate correctly
/// when a value feeds several consumers (the shared trunk feeding every head).
/// A tape is single-threaded; use one tape per batch and per thread.
class Tape {
 public:
  Var leaf(Tensor value);      ///< differentiable input (parameters)
  Var constant(Tensor value);  ///< non-differentiable input (data, labels)

  const Tensor& value(Var v) const { return nodes_[v.id].value; }
  const Tensor& grad(Var v) const { return nodes_[v.id].grad; }
  bool requires_grad(Var v) const { return nodes_[v.id].requires_grad; }
  std::size_t size() const { return nodes_.size(); }

  /// Computes d(root)/d(node) for every node recorded before root. Earlier
  /// gradients are discarded, so the tape can be differentiated for several
  /// roots in turn. `root` must hold exactly one value.
  void backward(Var root);

  // Used by the operation implementations.
  using Backprop = std::function<void(Tape&, std::size_t self)>;
  Var record(Tensor value, std::vector<std::size_t> parents, Backprop backprop);
  Tensor& grad_mut(std::size_t id) { return nodes_[id].grad; }
  const Tensor& value_of(std::size_t id) const { return nodes_[id].value; }
  bool needs_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  const std::vector<std::size_t>& parents(std::size_t id) const { return nodes_[id].parents; }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    std::vector<std::size_t> parents;
    Backprop backprop;
    bool requires_grad = false;
  };
  std::vector<Node> nodes_;
};

// Differentiable operations. All operands must live on the same tape.

Var matmul(Var a, Var b);            ///< (m x k) * (k x n)
Var add_bias(Var x, Var bias);       ///< (m x n) + (n) broadcast over rows
Var relu(Var x);
Var add(Var a, Var b);               ///< same shape
Var sub(Var a, Var b);               ///< same shape
Var mul(Var a, Var b);               ///< elementwise, same shape
Var div(Var a, Var b);               ///< elementwise, same shape
Var scale(Var x, double factor);
Var sqrt(Var x);
Var sum(Var x);                      ///< scalar result
Var concat_cols(Var a, Var b);       ///< (m x p) | (m x q) -> (m x (p+q))
/// Copies `shape`-many consecutive values starting at `offset` into a new node.
Var slice(Var x, std::size_t offset, std::vector<std::size_t> shape);
/// Σ weights[i] * terms[i] over scalar terms.
Var weighted_sum(std::span<const Var> terms, std::span<const double> weights);
/// Mean softmax cross-entropy of (batch x classes) logits against integer labels.
Var softmax_cross_entropy(Var logits, std::span<const int> labels);

}  // namespace moobench::ad
