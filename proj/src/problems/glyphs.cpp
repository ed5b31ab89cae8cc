#include "moobench/problems/glyphs.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace moobench::problems {
namespace {

using Template = std::vector<std::uint8_t>;

std::vector<Template> make_family(const MergedGlyphConfig& c, std::mt19937_64& rng) {
  std::bernoulli_distribution lit(c.template_density);
  std::vector<Template> family(c.classes_per_task, Template(c.glyph_size * c.glyph_size));
  for (auto& t : family)
    for (auto& px : t) px = lit(rng) ? 1 : 0;
  return family;
}

void stamp(std::vector<double>& canvas, std::size_t canvas_size, const Template& glyph,
           std::size_t glyph_size, std::size_t offset, double intensity, double flip_prob,
           std::mt19937_64& rng) {
  std::bernoulli_distribution flip(flip_prob);
  for (std::size_t r = 0; r < glyph_size; ++r) {
    for (std::size_t col = 0; col < glyph_size; ++col) {
      bool on = glyph[r * glyph_size + col] != 0;
      if (flip(rng)) on = !on;
      if (!on) continue;
      double& px = canvas[(r + offset) * canvas_size + (col + offset)];
      px = std::max(px, intensity);
    }
  }
}

Split make_split(const MergedGlyphConfig& c, const std::vector<Template>& top_left,
                 const std::vector<Template>& bottom_right, std::size_t count,
                 std::uint64_t first_id, std::mt19937_64& rng) {
  Split s;
  s.feature_dim = c.feature_dim();
  s.labels.assign(2, {});
  s.pixels.reserve(count * s.feature_dim);
  std::uniform_int_distribution<int> label(0, static_cast<int>(c.classes_per_task) - 1);
  std::uniform_real_distribution<double> brightness(c.min_intensity, 1.0);
  std::normal_distribution<double> noise(0.0, c.noise_std);

  std::vector<double> canvas(s.feature_dim);
  for (std::size_t i = 0; i < count; ++i) {
    const int tl = label(rng);
    const int br = label(rng);
    std::fill(canvas.begin(), canvas.end(), 0.0);
    stamp(canvas, c.canvas_size, top_left[static_cast<std::size_t>(tl)], c.glyph_size, 0,
          brightness(rng), c.pixel_flip_prob, rng);
    stamp(canvas, c.canvas_size, bottom_right[static_cast<std::size_t>(br)], c.glyph_size,
          c.overlap_shift, brightness(rng), c.pixel_flip_prob, rng);
    if (c.noise_std > 0.0) {
      for (auto& px : canvas) px = std::clamp(px + noise(rng), 0.0, 1.0);
    }
    s.pixels.insert(s.pixels.end(), canvas.begin(), canvas.end());
    s.labels[0].push_back(tl);
    s.labels[1].push_back(br);
    s.ids.push_back(first_id + i);
  }
  return s;
}

}  // namespace

void MergedGlyphConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("MergedGlyphConfig: " + msg); };
  if (glyph_size < 2) fail("glyph_size must be at least 2");
  if (overlap_shift >= glyph_size) fail("overlap_shift must be smaller than glyph_size");
  if (canvas_size < glyph_size + overlap_shift) fail("canvas_size must fit both shifted glyphs");
  if (classes_per_task < 2) fail("classes_per_task must be at least 2");
  if (!(noise_std >= 0.0)) fail("noise_std must be non-negative");
  if (!(template_density > 0.0 && template_density < 1.0)) fail("template_density must lie in (0, 1)");
  if (!(pixel_flip_prob >= 0.0 && pixel_flip_prob < 0.5)) fail("pixel_flip_prob must lie in [0, 0.5)");
  if (!(min_intensity > 0.0 && min_intensity <= 1.0)) fail("min_intensity must lie in (0, 1]");
  if (train_count == 0) fail("train_count must be positive");
}

LabeledExample Split::example(std::size_t i) const {
  return {row(i), labels.at(0).at(i), labels.size() > 1 ? labels[1].at(i) : -1};
}

GlyphDataset generate_glyph_dataset(const MergedGlyphConfig& config, std::uint64_t seed) {
  config.validate();
  GlyphDataset d;
  d.config = config;
  d.seed = seed;
  std::mt19937_64 rng(seed);
  const auto top_left = make_family(config, rng);
  const auto bottom_right = make_family(config, rng);
  d.train = make_split(config, top_left, bottom_right, config.train_count, 0, rng);
  d.validation = make_split(config, top_left, bottom_right, config.validation_count,
                            config.train_count, rng);
  d.test = make_split(config, top_left, bottom_right, config.test_count,
                      config.train_count + config.validation_count, rng);
  return d;
}

ad::Batch make_batch(const Split& split, std::span<const std::size_t> rows, std::size_t batch_index) {
  ad::Batch b;
  b.index = batch_index;
  std::vector<double> values;
  values.reserve(rows.size() * split.feature_dim);
  b.labels.assign(split.task_count(), {});
  for (auto r : rows) {
    const auto px = split.row(r);
    values.insert(values.end(), px.begin(), px.end());
    for (std::size_t j = 0; j < split.task_count(); ++j) b.labels[j].push_back(split.labels[j][r]);
  }
  b.inputs = ad::Tensor({rows.size(), split.feature_dim}, std::move(values));
  return b;
}

ad::Batch full_batch(const Split& split) {
  if (split.size() == 0) throw std::invalid_argument("full_batch: empty split");
  std::vector<std::size_t> rows(split.size());
  std::iota(rows.begin(), rows.end(), 0);
  return make_batch(split, rows, 0);
}

std::vector<ad::Batch> epoch_batches(const Split& split, std::size_t batch_size,
                                     std::uint64_t epoch_seed) {
  if (split.size() == 0) throw std::invalid_argument("epoch_batches: empty split");
  if (batch_size == 0) throw std::invalid_argument("epoch_batches: batch_size must be >= 1");
  std::vector<std::size_t> order(split.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(epoch_seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<ad::Batch> batches;
  for (std::size_t start = 0, index = 0; start < order.size(); start += batch_size, ++index) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    batches.push_back(make_batch(split, std::span(order).subspan(start, end - start), index));
  }
  return batches;
}

}  // namespace moobench::problems
