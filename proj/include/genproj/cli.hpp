#pragma once

#include <iosfwd>
#include <vector>

#include "genproj/generalized_projection.hpp"

namespace genproj {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,             // success, or verdict true
  kExitVerdictFalse = 1,   // a check ran and failed
  kExitUsage = 2,          // bad arguments, unreadable input, malformed file
  kExitNonConvergence = 3, // an eigensolver hit its sweep cap
};

/// is_generalized_projection for every n in 2..n_max.
std::vector<GenProjReport> scan_n(const Matrix& a, unsigned n_max, const Tolerance& tol);

/// Runs one sub-command (check, decompose, reconstruct, classify, verify,
/// qscan, gen). Reports go to `out` or to --output; diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace genproj
