#include "moobench/harness/plan.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace moobench::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::uint64_t to_uint(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a non-negative integer: '" + s + "'");
  }
  return std::stoull(s);
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F&& fmt) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s << ',';
    fmt(s, values[i]);
  }
  return s.str();
}

}  // namespace

std::string to_string(HpoMode mode) {
  switch (mode) {
    case HpoMode::none: return "none";
    case HpoMode::random: return "random";
    case HpoMode::grid: return "grid";
  }
  return "none";
}

HpoMode parse_hpo_mode(const std::string& name) {
  if (name == "none") return HpoMode::none;
  if (name == "random") return HpoMode::random;
  if (name == "grid") return HpoMode::grid;
  throw std::invalid_argument("unknown hpo mode '" + name + "' (expected random, grid or none)");
}

void ExperimentPlan::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("plan: " + m); };
  dataset_config(dataset);
  if (methods.empty()) fail("no methods");
  if (std::set(methods.begin(), methods.end()).size() != methods.size()) fail("duplicate methods");
  if (seeds.empty()) fail("no seeds");
  if (std::set(seeds.begin(), seeds.end()).size() != seeds.size()) fail("seeds must be distinct");
  if (capacities.empty()) fail("no capacities");
  for (double c : capacities)
    if (!(c > 0.0)) fail("capacities must be positive");
  if (trunk_widths.empty()) fail("no trunk widths");
  if (epochs == 0) fail("epochs must be positive");
  if (batch_size == 0) fail("batch_size must be positive");
  if (!(lr > 0.0)) fail("lr must be positive");
  if (!(weight_decay >= 0.0)) fail("wd must be non-negative");
  if (ref.size() != 2) fail("ref_point needs one value per task (2)");
  if (eval_rays < 2) fail("eval_rays must be at least 2");
  if (hpo == HpoMode::random && budget == 0) fail("budget must be positive");
  for (auto m : methods) {
    if (m == solvers::MethodKind::fixed_weight && ray.size() != 2) fail("fixed_weight needs ray = w1,w2");
  }
}

problems::MergedGlyphConfig dataset_config(const std::string& name) {
  problems::MergedGlyphConfig c;
  if (name == "glyphs") return c;
  if (name == "glyphs-small") {
    c.train_count = 1200;
    c.validation_count = 300;
    c.test_count = 400;
    return c;
  }
  throw std::invalid_argument("unknown dataset '" + name + "' (expected glyphs or glyphs-small)");
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  const auto items = split_list(text);
  std::vector<std::uint64_t> out;
  if (items.size() == 1) {
    const auto n = to_uint(items[0]);
    if (n == 0) throw std::invalid_argument("seed count must be positive");
    for (std::uint64_t s = 0; s < n; ++s) out.push_back(s);
    return out;
  }
  for (const auto& i : items) out.push_back(to_uint(i));
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& i : split_list(text)) out.push_back(to_double(i));
  return out;
}

void set_plan_value(ExperimentPlan& plan, const std::string& key, const std::string& value) {
  try {
    if (key == "dataset") plan.dataset = value;
    else if (key == "data_seed") plan.data_seed = to_uint(value);
    else if (key == "methods") {
      plan.methods.clear();
      for (const auto& m : split_list(value)) plan.methods.push_back(solvers::parse_method(m));
    } else if (key == "seeds") {
      plan.seeds.clear();
      for (const auto& s : split_list(value)) plan.seeds.push_back(to_uint(s));
    } else if (key == "capacities") plan.capacities = parse_doubles(value);
    else if (key == "trunk_widths") {
      plan.trunk_widths.clear();
      for (const auto& w : split_list(value)) plan.trunk_widths.push_back(to_uint(w));
    } else if (key == "hpo") plan.hpo = parse_hpo_mode(value);
    else if (key == "budget") plan.budget = to_uint(value);
    else if (key == "hpo_seed") plan.hpo_seed = to_uint(value);
    else if (key == "epochs") plan.epochs = to_uint(value);
    else if (key == "batch_size") plan.batch_size = to_uint(value);
    else if (key == "lr") plan.lr = to_double(value);
    else if (key == "wd") plan.weight_decay = to_double(value);
    else if (key == "scheduler") plan.scheduler = ad::parse_schedule(value);
    else if (key == "ray") plan.ray = parse_doubles(value);
    else if (key == "ref_point") plan.ref = parse_doubles(value);
    else if (key == "eval_rays") plan.eval_rays = to_uint(value);
    else if (key == "jobs") plan.jobs = to_uint(value);
    else throw std::invalid_argument("unknown plan key '" + key + "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("value out of range for '" + key + "': " + value);
  }
}

ExperimentPlan parse_plan(std::istream& in, ExperimentPlan plan) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("plan line " + std::to_string(number) + ": expected key = value");
    }
    try {
      set_plan_value(plan, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("plan line " + std::to_string(number) + ": " + e.what());
    }
  }
  return plan;
}

ExperimentPlan load_plan(const std::string& path, ExperimentPlan plan) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file " + path);
  return parse_plan(in, std::move(plan));
}

void write_plan(std::ostream& out, const ExperimentPlan& p) {
  auto plain = [](std::ostream& s, const auto& v) { s << v; };
  out << std::setprecision(17);
  out << "dataset = " << p.dataset << "\n"
      << "data_seed = " << p.data_seed << "\n"
      << "methods = "
      << join(p.methods, [](std::ostream& s, solvers::MethodKind m) { s << solvers::to_string(m); })
      << "\n"
      << "seeds = " << join(p.seeds, plain) << "\n"
      << "capacities = " << join(p.capacities, plain) << "\n"
      << "trunk_widths = " << join(p.trunk_widths, plain) << "\n"
      << "hpo = " << to_string(p.hpo) << "\n"
      << "budget = " << p.budget << "\n"
      << "hpo_seed = " << p.hpo_seed << "\n"
      << "epochs = " << p.epochs << "\n"
      << "batch_size = " << p.batch_size << "\n"
      << "lr = " << p.lr << "\n"
      << "wd = " << p.weight_decay << "\n"
      << "scheduler = " << ad::to_string(p.scheduler) << "\n";
  if (!p.ray.empty()) out << "ray = " << join(p.ray, plain) << "\n";
  out << "ref_point = " << join(p.ref, plain) << "\n"
      << "eval_rays = " << p.eval_rays << "\n"
      << "jobs = " << p.jobs << "\n";
}

}  // namespace moobench::harness
