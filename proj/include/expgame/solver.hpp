#pragma once

// Runs an external SMT solver on a script written to a temporary file.
//
// The command is a shell template; "{file}" is replaced by the script path,
// or the path is appended when the template has no placeholder. The answer
// is read from the first line of the solver's standard output.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace expgame {

enum class SolverAnswer : std::uint8_t { Sat, Unsat, Unknown };

const char* solver_answer_name(SolverAnswer a);

struct SolverRun {
  SolverAnswer answer = SolverAnswer::Unknown;
  std::string output;  // full standard output
  int exit_status = 0;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// $EXPGAME_SOLVER if set, otherwise "z3 -smt2 {file}" when z3 is on PATH.
std::optional<std::string> default_solver_command();

SolverRun run_solver(const std::string& command_template, const std::string& script);

}  // namespace expgame
