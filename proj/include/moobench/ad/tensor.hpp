#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace moobench::ad {

/// Dense row-major array of doubles. Rank 0 (scalar), 1 or 2 in practice.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
  Tensor(std::vector<std::size_t> shape, std::vector<double> values);

  static Tensor scalar(double value) { return Tensor({}, std::vector<double>{value}); }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  std::size_t rank() const { return shape_.size(); }

  /// Leading dimension for rank 2, 1 otherwise.
  std::size_t rows() const { return shape_.size() == 2 ? shape_[0] : 1; }
  /// Trailing dimension; the element count for rank <= 1.
  std::size_t cols() const { return shape_.size() == 2 ? shape_[1] : values_.size(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& storage() { return values_; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& at(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }

  /// The single value of a one-element tensor.
  double item() const;

  void fill(double v);
  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
  bool operator==(const Tensor& other) const = default;

  std::string shape_string() const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> values_;
};

std::size_t shape_size(const std::vector<std::size_t>& shape);

}  // namespace moobench::ad
