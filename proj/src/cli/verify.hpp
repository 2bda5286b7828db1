// verify.hpp — self-contained invariant suites runnable from the CLI.
// Prints one [PASS]/[FAIL] line per check with the measured value.
#pragma once

#include <string>

namespace nvcli {

// suite: graph, patterns, dynamics, dual, spectral, mixing, or all.
// inject_fault perturbs one eigenvalue by 1e-3 before the spectral residual
// check so a failure path can be demonstrated. Returns 0 iff every check
// passed, 1 otherwise; throws BadConfig for an unknown suite name.
int cmd_verify(const std::string& suite, bool inject_fault);

}  // namespace nvcli
