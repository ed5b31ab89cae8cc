#include "moobench/problems/dataset_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace moobench::problems {
namespace {

static_assert(std::endian::native == std::endian::little, "dataset files are little-endian");

constexpr const char* kMagic = "moobench-glyphs";
constexpr int kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw std::runtime_error("dataset: truncated record");
  }
  return value;
}

void write_split(std::ostream& out, const Split& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    put<std::uint64_t>(out, s.ids[i]);
    put<std::int32_t>(out, s.labels[0][i]);
    put<std::int32_t>(out, s.labels[1][i]);
    for (double px : s.row(i)) put<double>(out, px);
  }
}

Split read_split(std::istream& in, std::size_t count, std::size_t feature_dim) {
  Split s;
  s.feature_dim = feature_dim;
  s.labels.assign(2, {});
  s.pixels.reserve(count * feature_dim);
  for (std::size_t i = 0; i < count; ++i) {
    s.ids.push_back(get<std::uint64_t>(in));
    s.labels[0].push_back(get<std::int32_t>(in));
    s.labels[1].push_back(get<std::int32_t>(in));
    for (std::size_t k = 0; k < feature_dim; ++k) s.pixels.push_back(get<double>(in));
  }
  return s;
}

}  // namespace

void write_dataset(std::ostream& out, const GlyphDataset& d) {
  const auto& c = d.config;
  std::ostringstream header;
  header << std::setprecision(17) << kMagic << ' ' << kVersion << " glyph_size=" << c.glyph_size
         << " canvas_size=" << c.canvas_size << " classes=" << c.classes_per_task
         << " shift=" << c.overlap_shift << " noise_std=" << c.noise_std
         << " density=" << c.template_density << " flip=" << c.pixel_flip_prob
         << " min_intensity=" << c.min_intensity << " train=" << c.train_count
         << " validation=" << c.validation_count << " test=" << c.test_count << " seed=" << d.seed
         << '\n';
  out << header.str();
  write_split(out, d.train);
  write_split(out, d.validation);
  write_split(out, d.test);
  if (!out) throw std::runtime_error("dataset: write failed");
}

GlyphDataset read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset: missing header");
  std::istringstream header(line);
  std::string magic;
  int version = 0;
  header >> magic >> version;
  if (magic != kMagic) throw std::runtime_error("dataset: not a moobench glyph file");
  if (version != kVersion) throw std::runtime_error("dataset: unsupported version");

  std::map<std::string, std::string> fields;
  std::string token;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::runtime_error("dataset: bad header field '" + token + "'");
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  auto field = [&](const std::string& key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw std::runtime_error("dataset: header lacks '" + key + "'");
    return it->second;
  };

  GlyphDataset d;
  auto& c = d.config;
  c.glyph_size = std::stoul(field("glyph_size"));
  c.canvas_size = std::stoul(field("canvas_size"));
  c.classes_per_task = std::stoul(field("classes"));
  c.overlap_shift = std::stoul(field("shift"));
  c.noise_std = std::stod(field("noise_std"));
  c.template_density = std::stod(field("density"));
  c.pixel_flip_prob = std::stod(field("flip"));
  c.min_intensity = std::stod(field("min_intensity"));
  c.train_count = std::stoul(field("train"));
  c.validation_count = std::stoul(field("validation"));
  c.test_count = std::stoul(field("test"));
  d.seed = std::stoull(field("seed"));
  c.validate();

  d.train = read_split(in, c.train_count, c.feature_dim());
  d.validation = read_split(in, c.validation_count, c.feature_dim());
  d.test = read_split(in, c.test_count, c.feature_dim());
  return d;
}

void save_dataset(const std::filesystem::path& path, const GlyphDataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset " + path.string());
  write_dataset(out, dataset);
}

GlyphDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read dataset " + path.string());
  return read_dataset(in);
}

}  // namespace moobench::problems
