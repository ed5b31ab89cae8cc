#include "moobench/ad/tape.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace moobench::ad {

const Tensor& Var::value() const { return tape->value(*this); }
const Tensor& Var::grad() const { return tape->grad(*this); }

Var Tape::leaf(Tensor value) {
  nodes_.push_back(Node{std::move(value), {}, {}, {}, true});
  return Var{this, nodes_.size() - 1};
}

Var Tape::constant(Tensor value) {
  nodes_.push_back(Node{std::move(value), {}, {}, {}, false});
  return Var{this, nodes_.size() - 1};
}

Var Tape::record(Tensor value, std::vector<std::size_t> parents, Backprop backprop) {
  bool needs = false;
  for (auto p : parents) needs = needs || nodes_[p].requires_grad;
  nodes_.push_back(
      Node{std::move(value), {}, std::move(parents), needs ? std::move(backprop) : nullptr,
           needs});
  return Var{this, nodes_.size() - 1};
}

void Tape::backward(Var root) {
  if (root.tape != this) throw std::invalid_argument("backward: root belongs to another tape");
  if (nodes_[root.id].value.size() != 1) {
    throw std::invalid_argument("backward: root must be a single value, got shape " +
                                nodes_[root.id].value.shape_string());
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto& n = nodes_[i];
    if (i <= root.id && n.requires_grad) {
      n.grad = Tensor(n.value.shape(), 0.0);
    } else {
      n.grad = Tensor();
    }
  }
  if (!nodes_[root.id].requires_grad) return;
  nodes_[root.id].grad[0] = 1.0;
  for (std::size_t i = root.id + 1; i-- > 0;) {
    if (nodes_[i].backprop) nodes_[i].backprop(*this, i);
  }
}

namespace {

Tape& same_tape(Var a, Var b) {
  if (a.tape == nullptr || a.tape != b.tape) throw std::invalid_argument("operands on different tapes");
  return *a.tape;
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch " + a.shape_string() + " vs " +
                                b.shape_string());
  }
}

template <typename Fn>
Var elementwise_binary(Var a, Var b, const char* op, Fn fn, Tape::Backprop backprop) {
  Tape& t = same_tape(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  require_same_shape(av, bv, op);
  Tensor out(av.shape());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(av[i], bv[i]);
  return t.record(std::move(out), {a.id, b.id}, std::move(backprop));
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape& t = same_tape(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  const std::size_t m = av.rows(), k = av.cols(), n = bv.cols();
  if (bv.rows() != k) {
    throw std::invalid_argument("matmul: inner dimensions differ " + av.shape_string() + " * " +
                                bv.shape_string());
  }
  Tensor out({m, n});
  const double* A = av.values().data();
  const double* B = bv.values().data();
  double* C = out.values().data();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = A[i * k + p];
      if (aip == 0.0) continue;
      const double* brow = B + p * n;
      double* crow = C + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
  return t.record(std::move(out), {a.id, b.id}, [m, k, n](Tape& tape, std::size_t self) {
    const auto ia = tape.parents(self)[0];
    const auto ib = tape.parents(self)[1];
    const double* G = tape.grad_mut(self).values().data();
    const double* A = tape.value_of(ia).values().data();
    const double* B = tape.value_of(ib).values().data();
    if (tape.needs_grad(ia)) {
      double* dA = tape.grad_mut(ia).values().data();
      for (std::size_t i = 0; i < m; ++i) {
        const double* grow = G + i * n;
        for (std::size_t p = 0; p < k; ++p) {
          const double* brow = B + p * n;
          double acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += grow[j] * brow[j];
          dA[i * k + p] += acc;
        }
      }
    }
    if (tape.needs_grad(ib)) {
      double* dB = tape.grad_mut(ib).values().data();
      for (std::size_t i = 0; i < m; ++i) {
        const double* grow = G + i * n;
        for (std::size_t p = 0; p < k; ++p) {
          const double aip = A[i * k + p];
          if (aip == 0.0) continue;
          double* dbrow = dB + p * n;
          for (std::size_t j = 0; j < n; ++j) dbrow[j] += aip * grow[j];
        }
      }
    }
  });
}

Var add_bias(Var x, Var bias) {
  Tape& t = same_tape(x, bias);
  const Tensor& xv = x.value();
  const Tensor& bv = bias.value();
  const std::size_t m = xv.rows(), n = xv.cols();
  if (bv.size() != n) {
    throw std::invalid_argument("add_bias: bias " + bv.shape_string() + " does not match " +
                                xv.shape_string());
  }
  Tensor out = xv;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] += bv[j];
  return t.record(std::move(out), {x.id, bias.id}, [m, n](Tape& tape, std::size_t self) {
    const auto ix = tape.parents(self)[0];
    const auto ib = tape.parents(self)[1];
    const Tensor& g = tape.grad_mut(self);
    if (tape.needs_grad(ix)) {
      Tensor& dx = tape.grad_mut(ix);
      for (std::size_t i = 0; i < g.size(); ++i) dx[i] += g[i];
    }
    if (tape.needs_grad(ib)) {
      Tensor& db = tape.grad_mut(ib);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) db[j] += g[i * n + j];
    }
  });
}

Var relu(Var x) {
  Tape& t = *x.tape;
  Tensor out = x.value();
  for (auto& v : out.values()) v = v > 0.0 ? v : 0.0;
  return t.record(std::move(out), {x.id}, [](Tape& tape, std::size_t self) {
    const auto ix = tape.parents(self)[0];
    const Tensor& y = tape.value_of(self);
    const Tensor& g = tape.grad_mut(self);
    Tensor& dx = tape.grad_mut(ix);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (y[i] > 0.0) dx[i] += g[i];
  });
}

Var add(Var a, Var b) {
  return elementwise_binary(a, b, "add", std::plus<>(), [](Tape& tape, std::size_t self) {
    const Tensor& g = tape.grad_mut(self);
    for (auto p : tape.parents(self)) {
      if (!tape.needs_grad(p)) continue;
      Tensor& d = tape.grad_mut(p);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i];
    }
  });
}

Var sub(Var a, Var b) {
  return elementwise_binary(a, b, "sub", std::minus<>(), [](Tape& tape, std::size_t self) {
    const Tensor& g = tape.grad_mut(self);
    const auto ia = tape.parents(self)[0];
    const auto ib = tape.parents(self)[1];
    if (tape.needs_grad(ia)) {
      Tensor& d = tape.grad_mut(ia);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i];
    }
    if (tape.needs_grad(ib)) {
      Tensor& d = tape.grad_mut(ib);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] -= g[i];
    }
  });
}

Var mul(Var a, Var b) {
  return elementwise_binary(a, b, "mul", std::multiplies<>(), [](Tape& tape, std::size_t self) {
    const Tensor& g = tape.grad_mut(self);
    const auto ia = tape.parents(self)[0];
    const auto ib = tape.parents(self)[1];
    const Tensor& av = tape.value_of(ia);
    const Tensor& bv = tape.value_of(ib);
    if (tape.needs_grad(ia)) {
      Tensor& d = tape.grad_mut(ia);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * bv[i];
    }
    if (tape.needs_grad(ib)) {
      Tensor& d = tape.grad_mut(ib);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * av[i];
    }
  });
}

Var div(Var a, Var b) {
  return elementwise_binary(a, b, "div", std::divides<>(), [](Tape& tape, std::size_t self) {
    const Tensor& g = tape.grad_mut(self);
    const auto ia = tape.parents(self)[0];
    const auto ib = tape.parents(self)[1];
    const Tensor& av = tape.value_of(ia);
    const Tensor& bv = tape.value_of(ib);
    if (tape.needs_grad(ia)) {
      Tensor& d = tape.grad_mut(ia);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] / bv[i];
    }
    if (tape.needs_grad(ib)) {
      Tensor& d = tape.grad_mut(ib);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] -= g[i] * av[i] / (bv[i] * bv[i]);
    }
  });
}

Var scale(Var x, double factor) {
  Tensor out = x.value();
  for (auto& v : out.values()) v *= factor;
  return x.tape->record(std::move(out), {x.id}, [factor](Tape& tape, std::size_t self) {
    const Tensor& g = tape.grad_mut(self);
    Tensor& d = tape.grad_mut(tape.parents(self)[0]);
    for (std::size_t i = 0; i < g.size(); ++i) d[i] += factor * g[i];
  });
}

Var sqrt(Var x) {
  Tensor out = x.value();
  for (auto& v : out.values()) {
    if (v < 0.0) throw std::domain_error("sqrt: negative input");
    v = std::sqrt(v);
  }
  return x.tape->record(std::move(out), {x.id}, [](Tape& tape, std::size_t self) {
    const Tensor& g = tape.grad_mut(self);
    const Tensor& y = tape.value_of(self);
    Tensor& d = tape.grad_mut(tape.parents(self)[0]);
    for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * 0.5 / y[i];
  });
}

Var sum(Var x) {
  double s = 0.0;
  for (double v : x.value().values()) s += v;
  return x.tape->record(Tensor::scalar(s), {x.id}, [](Tape& tape, std::size_t self) {
    const double g = tape.grad_mut(self)[0];
    Tensor& d = tape.grad_mut(tape.parents(self)[0]);
    for (auto& v : d.values()) v += g;
  });
}

Var concat_cols(Var a, Var b) {
  Tape& t = same_tape(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  const std::size_t m = av.rows();
  if (bv.rows() != m) {
    throw std::invalid_argument("concat_cols: row mismatch " + av.shape_string() + " | " +
                                bv.shape_string());
  }
  const std::size_t p = av.cols(), q = bv.cols();
  Tensor out({m, p + q});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) out[i * (p + q) + j] = av[i * p + j];
    for (std::size_t j = 0; j < q; ++j) out[i * (p + q) + p + j] = bv[i * q + j];
  }
  return t.record(std::move(out), {a.id, b.id}, [m, p, q](Tape& tape, std::size_t self) {
    const Tensor& g = tape.grad_mut(self);
    const auto ia = tape.parents(self)[0];
    const auto ib = tape.parents(self)[1];
    if (tape.needs_grad(ia)) {
      Tensor& d = tape.grad_mut(ia);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < p; ++j) d[i * p + j] += g[i * (p + q) + j];
    }
    if (tape.needs_grad(ib)) {
      Tensor& d = tape.grad_mut(ib);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < q; ++j) d[i * q + j] += g[i * (p + q) + p + j];
    }
  });
}

Var slice(Var x, std::size_t offset, std::vector<std::size_t> shape) {
  const Tensor& xv = x.value();
  const std::size_t count = shape_size(shape);
  if (offset + count > xv.size()) {
    throw std::invalid_argument("slice: range [" + std::to_string(offset) + ", " +
                                std::to_string(offset + count) + ") exceeds " +
                                std::to_string(xv.size()) + " values");
  }
  std::vector<double> vals(xv.values().begin() + static_cast<std::ptrdiff_t>(offset),
                           xv.values().begin() + static_cast<std::ptrdiff_t>(offset + count));
  return x.tape->record(Tensor(std::move(shape), std::move(vals)), {x.id},
                        [offset](Tape& tape, std::size_t self) {
                          const Tensor& g = tape.grad_mut(self);
                          Tensor& d = tape.grad_mut(tape.parents(self)[0]);
                          for (std::size_t i = 0; i < g.size(); ++i) d[offset + i] += g[i];
                        });
}

Var weighted_sum(std::span<const Var> terms, std::span<const double> weights) {
  if (terms.empty() || terms.size() != weights.size()) {
    throw std::invalid_argument("weighted_sum: need one weight per term");
  }
  Tape& t = *terms.front().tape;
  double s = 0.0;
  std::vector<std::size_t> parents;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].tape != &t) throw std::invalid_argument("weighted_sum: terms on different tapes");
    s += weights[i] * terms[i].value().item();
    parents.push_back(terms[i].id);
  }
  std::vector<double> w(weights.begin(), weights.end());
  return t.record(Tensor::scalar(s), std::move(parents),
                  [w = std::move(w)](Tape& tape, std::size_t self) {
                    const double g = tape.grad_mut(self)[0];
                    const auto& ps = tape.parents(self);
                    for (std::size_t i = 0; i < ps.size(); ++i) {
                      if (tape.needs_grad(ps[i])) tape.grad_mut(ps[i])[0] += w[i] * g;
                    }
                  });
}

Var softmax_cross_entropy(Var logits, std::span<const int> labels) {
  const Tensor& z = logits.value();
  const std::size_t batch = z.rows(), classes = z.cols();
  if (labels.size() != batch) {
    throw std::invalid_argument("softmax_cross_entropy: " + std::to_string(labels.size()) +
                                " labels for " + std::to_string(batch) + " rows");
  }
  std::vector<double> probs(z.size());
  double total = 0.0;
  for (std::size_t i = 0; i < batch; ++i) {
    const int label = labels[i];
    if (label < 0 || static_cast<std::size_t>(label) >= classes) {
      throw std::invalid_argument("softmax_cross_entropy: label " + std::to_string(label) +
                                  " outside [0, " + std::to_string(classes) + ")");
    }
    const double* row = z.values().data() + i * classes;
    double mx = row[0];
    for (std::size_t c = 1; c < classes; ++c) mx = std::max(mx, row[c]);
    double denom = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
      probs[i * classes + c] = std::exp(row[c] - mx);
      denom += probs[i * classes + c];
    }
    for (std::size_t c = 0; c < classes; ++c) probs[i * classes + c] /= denom;
    total += std::log(denom) + mx - row[label];
  }
  std::vector<int> targets(labels.begin(), labels.end());
  return logits.tape->record(
      Tensor::scalar(total / static_cast<double>(batch)), {logits.id},
      [probs = std::move(probs), targets = std::move(targets), batch, classes](Tape& tape,
                                                                               std::size_t self) {
        const double g = tape.grad_mut(self)[0] / static_cast<double>(batch);
        Tensor& d = tape.grad_mut(tape.parents(self)[0]);
        for (std::size_t i = 0; i < batch; ++i) {
          for (std::size_t c = 0; c < classes; ++c) d[i * classes + c] += g * probs[i * classes + c];
          d[i * classes + static_cast<std::size_t>(targets[i])] -= g;
        }
      });
}

}  // namespace moobench::ad
