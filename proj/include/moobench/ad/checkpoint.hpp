#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "moobench/ad/network.hpp"

namespace moobench::ad {

/// Versioned text checkpoint holding a network spec, its parameters and a
/// free-form provenance line. Values are written with 17 significant digits,
/// so a save/load cycle reproduces every double exactly.
///
///   moobench-checkpoint 1
///   input_dim <n>
///   trunk_widths <count> <w>...
///   width_multiplier <c>
///   head_widths <count> <w>...
///   task_count <J>
///   classes_per_task <K>
///   provenance <text until end of line>
///   tensor <shared|task<j>> <index> <rank> <dim>...
///   <values, space separated>
///   ...
///   end
struct Checkpoint {
  NetworkSpec spec;
  ParameterSet params;
  std::string provenance;
};

void write_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace moobench::ad
