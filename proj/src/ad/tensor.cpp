#include "moobench/ad/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace moobench::ad {

std::size_t shape_size(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), values_(shape_size(shape_), fill) {
  if (std::find(shape_.begin(), shape_.end(), 0) != shape_.end()) {
    throw std::invalid_argument("Tensor: zero-sized dimension in " + shape_string());
  }
}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (std::find(shape_.begin(), shape_.end(), 0) != shape_.end()) {
    throw std::invalid_argument("Tensor: zero-sized dimension in " + shape_string());
  }
  if (values_.size() != shape_size(shape_)) {
    throw std::invalid_argument("Tensor: " + std::to_string(values_.size()) +
                                " values do not fit shape " + shape_string());
  }
}

double Tensor::item() const {
  if (values_.size() != 1) throw std::logic_error("Tensor::item on shape " + shape_string());
  return values_[0];
}

void Tensor::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

std::string Tensor::shape_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape_[i]);
  }
  return s + ")";
}

}  // namespace moobench::ad
