#pragma once

#include <iosfwd>

// Command-line front end. Matrices go to `out`, diagnostics to `err`.
//
// Exit codes:
//   0  success
//   1  `check` found a failing property
//   2  parse, shape or parameter error
//   3  domain error (zero weight, index violation, decomposition failure)
//   4  --verify mismatch
//   5  capacity error (--cramer with n > 64)
namespace ginv {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ginv
