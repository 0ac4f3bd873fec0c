#include "expgame/solver.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace expgame {

const char* solver_answer_name(SolverAnswer a) {
  switch (a) {
    case SolverAnswer::Sat: return "sat";
    case SolverAnswer::Unsat: return "unsat";
    case SolverAnswer::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

bool on_path(const std::string& exe) {
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) continue;
    const auto candidate = std::filesystem::path(dir) / exe;
    if (::access(candidate.c_str(), X_OK) == 0) return true;
  }
  return false;
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    std::string pattern = (std::filesystem::temp_directory_path() / "expgame-XXXXXX.smt2").string();
    const int fd = ::mkstemps(pattern.data(), 5);
    if (fd < 0) throw SolverError("cannot create temporary file");
    ::close(fd);
    path_ = pattern;
    std::ofstream out(path_, std::ios::binary);
    out << contents;
    if (!out) throw SolverError("cannot write " + path_);
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

std::optional<std::string> default_solver_command() {
  if (const char* env = std::getenv("EXPGAME_SOLVER"); env && *env) return std::string(env);
  if (on_path("z3")) return std::string("z3 -smt2 {file}");
  return std::nullopt;
}

SolverRun run_solver(const std::string& command_template, const std::string& script) {
  TempFile file(script);
  std::string command = command_template;
  const std::string quoted = "'" + file.path() + "'";
  if (const auto at = command.find("{file}"); at != std::string::npos) {
    command.replace(at, 6, quoted);
  } else {
    command += " " + quoted;
  }

  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) throw SolverError("cannot run: " + command);
  SolverRun run;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) run.output.append(buf.data(), n);
  const int status = ::pclose(pipe);
  run.exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  std::string first = run.output.substr(0, run.output.find('\n'));
  while (!first.empty() && (first.back() == '\r' || first.back() == ' ')) first.pop_back();
  if (first == "sat") {
    run.answer = SolverAnswer::Sat;
  } else if (first == "unsat") {
    run.answer = SolverAnswer::Unsat;
  } else if (first == "unknown") {
    run.answer = SolverAnswer::Unknown;
  } else {
    throw SolverError("unexpected solver output: " + (first.empty() ? std::string("(empty)") : first));
  }
  return run;
}

}  // namespace expgame
