#pragma once

#include <iosfwd>

namespace expgame {

// Exit codes. Verdict-bearing commands return 0 (equilibrium, tautology,
// fixed point), 1 (refuted, counterexample, cycle) or 2 (unknown,
// iteration limit).
enum ExitCode : int {
  kExitOk = 0,
  kExitRefuted = 1,
  kExitUnknown = 2,
  kExitUsage = 64,
  kExitDataError = 65,
  kExitNoInput = 66,
  kExitUnavailable = 69,  // solver missing or failed
  kExitLimit = 70,        // enumeration cap exceeded
};

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace expgame
