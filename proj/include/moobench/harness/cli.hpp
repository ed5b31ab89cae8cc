#pragma once

#include <iosfwd>

namespace moobench::harness {

/// Subcommands hpo, run, ablate, report and selftest. Returns 0 on success,
/// 1 on a usage error and 2 when the run itself fails.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace moobench::harness
