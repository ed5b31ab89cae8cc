#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "moobench/ad/network.hpp"

namespace moobench::problems {

/// Geometry and size of the synthetic two-task overlapping-glyph dataset.
///
/// Each image holds a top-left glyph from family 0 and a bottom-right glyph
/// from family 1, offset by `overlap_shift` pixels along both axes so that
/// the two instances overlap heavily. Task 0 predicts the top-left class,
/// task 1 the bottom-right class.
struct MergedGlyphConfig {
  std::size_t glyph_size = 8;
  std::size_t canvas_size = 12;
  std::size_t classes_per_task = 10;
  std::size_t overlap_shift = 4;
  double noise_std = 0.3;
  double template_density = 0.4;  ///< fraction of lit pixels per class template
  double pixel_flip_prob = 0.2;   ///< per-example template perturbation
  double min_intensity = 0.7;     ///< glyph brightness drawn from [min_intensity, 1]
  std::size_t train_count = 5400;
  std::size_t validation_count = 600;
  std::size_t test_count = 1000;

  void validate() const;
  std::size_t feature_dim() const { return canvas_size * canvas_size; }
  bool operator==(const MergedGlyphConfig&) const = default;
};

/// Read-only view of one example.
struct LabeledExample {
  std::span<const double> pixels;
  int label_tl;
  int label_br;
};

/// Row-major examples with one label vector per task. `ids` identify an
/// example's position in the generation stream and are unique across splits.
struct Split {
  std::size_t feature_dim = 0;
  std::vector<double> pixels;
  std::vector<std::vector<int>> labels;
  std::vector<std::uint64_t> ids;

  std::size_t size() const { return ids.size(); }
  std::size_t task_count() const { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {pixels.data() + i * feature_dim, feature_dim};
  }
  LabeledExample example(std::size_t i) const;
  bool operator==(const Split&) const = default;
};

struct GlyphDataset {
  MergedGlyphConfig config;
  std::uint64_t seed = 0;
  Split train;
  Split validation;
  Split test;
  bool operator==(const GlyphDataset&) const = default;
};

/// Deterministic in (config, seed). Throws std::invalid_argument on bad geometry.
GlyphDataset generate_glyph_dataset(const MergedGlyphConfig& config, std::uint64_t seed);

/// Copies the given rows into a Batch.
ad::Batch make_batch(const Split& split, std::span<const std::size_t> rows, std::size_t batch_index);

/// The whole split as a single batch, in stored order.
ad::Batch full_batch(const Split& split);

/// A fresh permutation of the split cut into consecutive batches; the last
/// batch keeps the remainder. Throws std::invalid_argument on an empty split
/// or zero batch size.
std::vector<ad::Batch> epoch_batches(const Split& split, std::size_t batch_size,
                                     std::uint64_t epoch_seed);

}  // namespace moobench::problems
