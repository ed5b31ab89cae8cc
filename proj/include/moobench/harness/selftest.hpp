#pragma once

#include <iosfwd>

namespace moobench::harness {

/// Quick oracle suites: exact vs Monte-Carlo HV, Frank-Wolfe vs the
/// two-gradient closed form, and finite differences through the network and
/// the hypernetwork. Prints one line per suite; true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace moobench::harness
