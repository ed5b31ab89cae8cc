#include "moobench/ad/checkpoint.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace moobench::ad {
namespace {

constexpr const char* kMagic = "moobench-checkpoint";
constexpr int kVersion = 1;

void write_widths(std::ostream& out, const char* key, const std::vector<std::size_t>& widths) {
  out << key << ' ' << widths.size();
  for (auto w : widths) out << ' ' << w;
  out << '\n';
}

void write_tensor(std::ostream& out, const std::string& partition, std::size_t index,
                  const Tensor& t) {
  out << "tensor " << partition << ' ' << index << ' ' << t.rank();
  for (auto d : t.shape()) out << ' ' << d;
  out << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
  out << '\n';
}

[[noreturn]] void malformed(const std::string& what) {
  throw std::runtime_error("checkpoint: " + what);
}

void expect_key(std::istream& in, const std::string& key) {
  std::string got;
  if (!(in >> got) || got != key) malformed("expected '" + key + "', found '" + got + "'");
}

std::vector<std::size_t> read_widths(std::istream& in, const std::string& key) {
  expect_key(in, key);
  std::size_t n = 0;
  if (!(in >> n)) malformed("bad count for " + key);
  std::vector<std::size_t> widths(n);
  for (auto& w : widths)
    if (!(in >> w)) malformed("bad width in " + key);
  return widths;
}

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& c) {
  c.spec.validate();
  out << std::setprecision(17);
  out << kMagic << ' ' << kVersion << '\n';
  out << "input_dim " << c.spec.input_dim << '\n';
  write_widths(out, "trunk_widths", c.spec.trunk_widths);
  out << "width_multiplier " << c.spec.width_multiplier << '\n';
  write_widths(out, "head_widths", c.spec.head_widths);
  out << "task_count " << c.spec.task_count << '\n';
  out << "classes_per_task " << c.spec.classes_per_task << '\n';
  std::string provenance = c.provenance;
  for (auto& ch : provenance)
    if (ch == '\n' || ch == '\r') ch = ' ';
  out << "provenance " << provenance << '\n';
  for (std::size_t i = 0; i < c.params.shared.size(); ++i) write_tensor(out, "shared", i, c.params.shared[i]);
  for (std::size_t j = 0; j < c.params.per_task.size(); ++j)
    for (std::size_t i = 0; i < c.params.per_task[j].size(); ++i)
      write_tensor(out, "task" + std::to_string(j), i, c.params.per_task[j][i]);
  out << "end\n";
}

Checkpoint read_checkpoint(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) malformed("not a moobench checkpoint");
  if (version != kVersion) malformed("unsupported version " + std::to_string(version));

  Checkpoint c;
  expect_key(in, "input_dim");
  in >> c.spec.input_dim;
  c.spec.trunk_widths = read_widths(in, "trunk_widths");
  expect_key(in, "width_multiplier");
  in >> c.spec.width_multiplier;
  c.spec.head_widths = read_widths(in, "head_widths");
  expect_key(in, "task_count");
  in >> c.spec.task_count;
  expect_key(in, "classes_per_task");
  in >> c.spec.classes_per_task;
  if (!in) malformed("truncated header");
  c.spec.validate();
  expect_key(in, "provenance");
  std::getline(in >> std::ws, c.provenance);

  // the spec fixes every shape; the file must agree with it
  const ParameterSet expected = zero_parameters(c.spec);
  c.params = expected;
  std::size_t tensors_read = 0;
  const std::size_t tensors_expected = expected.tensors().size();
  while (true) {
    std::string key;
    if (!(in >> key)) malformed("missing 'end'");
    if (key == "end") break;
    if (key != "tensor") malformed("unexpected token '" + key + "'");
    std::string partition;
    std::size_t index = 0, rank = 0;
    in >> partition >> index >> rank;
    std::vector<std::size_t> shape(rank);
    for (auto& d : shape) in >> d;
    if (!in) malformed("bad tensor header");

    Tensor* target = nullptr;
    if (partition == "shared") {
      if (index < c.params.shared.size()) target = &c.params.shared[index];
    } else if (partition.rfind("task", 0) == 0) {
      const std::size_t j = std::stoul(partition.substr(4));
      if (j < c.params.per_task.size() && index < c.params.per_task[j].size())
        target = &c.params.per_task[j][index];
    }
    if (target == nullptr) malformed("tensor " + partition + "/" + std::to_string(index) + " not in spec");
    if (target->shape() != shape) malformed("tensor " + partition + "/" + std::to_string(index) + " has wrong shape");
    for (auto& v : target->values())
      if (!(in >> v)) malformed("truncated tensor values");
    ++tensors_read;
  }
  if (tensors_read != tensors_expected) malformed("tensor count mismatch");
  return c;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  write_checkpoint(out, checkpoint);
  if (!out) throw std::runtime_error("failed writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace moobench::ad
