#pragma once

#include <iosfwd>

namespace upgmc::selftest {

struct Options {
  // Deliberately breaks the reference oracle's tie ordering. Used by tests as
  // a negative control proving the suite can fail.
  bool corrupt_tie_break = false;
};

/// Runs the built-in counter-formula, engine-equivalence and structure checks
/// at small n, writing one report line per check. Returns true when every
/// check passes.
bool run(std::ostream& report, const Options& options = {});

}  // namespace upgmc::selftest
