#include "expgame/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "expgame/game_file.hpp"
#include "expgame/rcf.hpp"
#include "expgame/report.hpp"
#include "expgame/solver.hpp"
#include "expgame/tautology.hpp"

namespace expgame {

namespace {

// Thrown to abandon a command with the given exit code; the message has
// already been printed.
struct Abort {
  int code;
};

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << path << '\n';
    throw Abort{kExitNoInput};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_diagnostics(const std::string& name, const std::string& text, const std::vector<Diagnostic>& ds,
                       std::ostream& err) {
  for (const auto& d : ds) err << render_diagnostic(name, text, d);
}

Game load_game(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path, err);
  auto r = parse_game_file(text);
  if (!r.ok()) {
    print_diagnostics(path, text, r.diagnostics, err);
    throw Abort{kExitDataError};
  }
  return std::move(*r.value);
}

Profile load_profile(const std::string& path, const Game& g, std::ostream& err) {
  const std::string text = read_file(path, err);
  auto r = parse_profile_file(text, g);
  if (!r.ok()) {
    print_diagnostics(path, text, r.diagnostics, err);
    throw Abort{kExitDataError};
  }
  return std::move(*r.value);
}

void write_text(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    err << "error: cannot write " << path << '\n';
    throw Abort{kExitNoInput};
  }
}

int verdict_exit(const Verdict& v) {
  if (is_equilibrium(v)) return kExitOk;
  if (is_refuted(v)) return kExitRefuted;
  return kExitUnknown;
}

struct Options {
  std::string game;
  std::string profile;
  std::string combination;
  std::string start;
  std::string report;
  std::string verify_profile;
  std::string player;
  std::string solver;
  std::string output;
  std::string formula;
  std::string atoms;
  std::uint32_t grid = 1;
  std::uint32_t k = 1;
  std::uint64_t max_iters = 100;
  bool existence = false;
  bool unlimited = false;
  std::optional<std::uint64_t> cap;
};

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const Game g = load_game(o.game, err);
  std::size_t strategies = 0;
  for (std::size_t i = 0; i < g.player_count(); ++i) strategies += strategy_count(g, i);
  out << o.game << ": ok (k=" << g.scale.k() << ", " << g.player_count() << " players, " << g.variables.size()
      << " variables, " << strategies << " pure strategies)\n";
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const Game g = load_game(o.game, err);
  auto combo = parse_combination(o.combination, g);
  if (!combo.ok()) {
    print_diagnostics("--combination", o.combination, combo.diagnostics, err);
    return kExitDataError;
  }
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    out << g.players[i] << "  " << payoff(g, i, *combo.value) << '\n';
  }
  return kExitOk;
}

int cmd_expect(const Options& o, const EnumerationLimits& limits, std::ostream& out, std::ostream& err) {
  const Game g = load_game(o.game, err);
  const Profile p = load_profile(o.profile, g, err);
  const auto values = expected_payoffs(g, p, limits);
  for (std::size_t i = 0; i < g.player_count(); ++i) out << "E[" << g.players[i] << "]  " << values[i] << '\n';
  return kExitOk;
}

int cmd_goals(const Options& o, const EnumerationLimits& limits, std::ostream& out, std::ostream& err) {
  const Game g = load_game(o.game, err);
  const Profile p = load_profile(o.profile, g, err);
  const auto values = eval_goals(g, p, limits);
  for (std::size_t i = 0; i < g.player_count(); ++i) out << g.players[i] << "  " << values[i] << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, const EnumerationLimits& limits, std::ostream& out, std::ostream& err) {
  const Game g = load_game(o.game, err);
  const Profile p = load_profile(o.profile, g, err);
  const auto report = verify_equilibrium(g, p, o.grid, limits);
  out << format_verification(g, report);
  if (!o.report.empty()) write_text(o.report, verification_summary(g, report), err);
  return verdict_exit(report.overall);
}

int cmd_dynamics(const Options& o, const EnumerationLimits& limits, std::ostream& out, std::ostream& err) {
  const Game g = load_game(o.game, err);
  const Profile start = o.start.empty() ? all_zero_profile(g) : load_profile(o.start, g, err);
  const auto trace = best_response_dynamics(g, start, o.max_iters, o.grid, limits);
  out << format_dynamics(g, trace);
  if (std::holds_alternative<FixedPoint>(trace.status)) return kExitOk;
  if (std::holds_alternative<Cycle>(trace.status)) return kExitRefuted;
  return kExitUnknown;
}

int cmd_search(const Options& o, const EnumerationLimits& limits, std::ostream& out, std::ostream& err) {
  const Game g = load_game(o.game, err);
  const auto report = search_equilibrium(g, o.grid, limits);
  out << format_search(g, report, o.grid);
  if (!o.report.empty()) write_text(o.report, search_summary(g, report), err);
  return report.certified ? kExitOk : kExitUnknown;
}

int cmd_compile(const Options& o, const EnumerationLimits& limits, std::ostream& out, std::ostream& err) {
  const Game g = load_game(o.game, err);
  rcf::SmtScript script;
  if (o.existence) {
    script = rcf::compile_existence_sentence(g, limits);
  } else {
    const auto player = g.player_index(o.player);
    if (!player) {
      err << "error: unknown player " << o.player << '\n';
      return kExitUsage;
    }
    const Profile p = load_profile(o.verify_profile, g, err);
    script = rcf::compile_verification_query(g, p, *player, limits);
  }
  const std::string text = script.str();
  if (!o.output.empty()) write_text(o.output, text, err);
  if (o.solver.empty()) {
    if (o.output.empty()) out << text;
    return kExitOk;
  }

  std::string command = o.solver;
  if (command == "auto") {
    const auto found = default_solver_command();
    if (!found) {
      err << "error: no solver found; set EXPGAME_SOLVER or put z3 on PATH\n";
      return kExitUnavailable;
    }
    command = *found;
  }
  SolverRun run;
  try {
    run = run_solver(command, text);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnavailable;
  }
  const char* answer = solver_answer_name(run.answer);
  out << "solver: " << answer << '\n';
  if (run.answer == SolverAnswer::Unknown) {
    out << "meaning: undecided\n";
    return kExitUnknown;
  }
  const bool sat = run.answer == SolverAnswer::Sat;
  if (o.existence) {
    out << "meaning: " << (sat ? "an equilibrium exists" : "no equilibrium exists") << '\n';
    return sat ? kExitOk : kExitRefuted;
  }
  out << "meaning: " << o.player << (sat ? " has an improving deviation" : " is best responding") << '\n';
  return sat ? kExitRefuted : kExitOk;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_taut(const Options& o, const EnumerationLimits& limits, std::ostream& out, std::ostream& err) {
  if (!o.atoms.empty()) {
    const auto names = split_names(o.atoms);
    auto f = parse_modal_formula(o.formula, names);
    if (!f.ok()) {
      print_diagnostics("formula", o.formula, f.diagnostics, err);
      return kExitDataError;
    }
    const auto r = check_goal_on_grid(*f.value, names.size(), o.grid, limits);
    if (r.holds_on_sample) {
      out << "holds on " << r.points_checked << " sample points (sampled, not proven)\n";
      return kExitUnknown;
    }
    out << "counterexample:";
    for (const auto& [atom, v] : *r.counterexample) out << " E[" << names[atom] << "]=" << v;
    out << '\n';
    return kExitRefuted;
  }

  auto f = parse_formula(o.formula);
  if (!f.ok()) {
    print_diagnostics("formula", o.formula, f.diagnostics, err);
    return kExitDataError;
  }
  const LkScale scale(o.k);
  if (const auto outside = constants_outside(*f.value, scale); !outside.empty()) {
    err << "error: constant " << outside.front() << " is not in L_" << o.k << '\n';
    return kExitDataError;
  }
  const auto r = check_tautology(*f.value, scale, limits);
  if (r.holds) {
    out << "tautology in L_" << o.k << " (" << r.valuations_checked << " valuations)\n";
    return kExitOk;
  }
  out << "not a tautology: value " << r.counterexample_value << " at";
  for (const auto& [v, x] : *r.counterexample) out << ' ' << v << '=' << x;
  out << '\n';
  return kExitRefuted;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expectation games over finite-valued Lukasiewicz logic", "expgame"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--unlimited", o.unlimited, "Disable all enumeration caps");
  app.add_option("--cap", o.cap, "Use this cap for every enumeration instead of the defaults")
      ->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Validate a game file");
  check->add_option("game", o.game)->required();

  auto* eval = app.add_subcommand("eval", "Payoffs of a pure strategy combination");
  eval->add_option("game", o.game)->required();
  eval->add_option("--combination", o.combination, "Assignments such as p1=1,p2=0")->required();

  auto* expect = app.add_subcommand("expect", "Expected payoffs under a profile");
  expect->add_option("game", o.game)->required();
  expect->add_option("profile", o.profile)->required();

  auto* goals = app.add_subcommand("goals", "Goal values under a profile");
  goals->add_option("game", o.game)->required();
  goals->add_option("profile", o.profile)->required();

  auto* verify = app.add_subcommand("verify", "Check whether a profile is an equilibrium");
  verify->add_option("game", o.game)->required();
  verify->add_option("profile", o.profile)->required();
  verify->add_option("--grid", o.grid, "Also try mixed deviations with probabilities in (1/D)Z")
      ->check(CLI::PositiveNumber);
  verify->add_option("--report", o.report, "Write a key=value summary");

  auto* dynamics = app.add_subcommand("dynamics", "Round-robin best-response dynamics");
  dynamics->add_option("game", o.game)->required();
  dynamics->add_option("--start", o.start, "Start profile (default: every player on strategy 0)");
  dynamics->add_option("--max-iters", o.max_iters, "Maximum number of player turns");
  dynamics->add_option("--grid", o.grid, "Best responses are taken over this grid")->check(CLI::PositiveNumber);

  auto* search = app.add_subcommand("search", "Scan grid profiles for a certified equilibrium");
  search->add_option("game", o.game)->required();
  search->add_option("--grid", o.grid, "Grid denominator")->required()->check(CLI::PositiveNumber);
  search->add_option("--report", o.report, "Write a key=value summary");

  auto* compile = app.add_subcommand("compile", "Emit SMT-LIB2 for an equilibrium query");
  compile->add_option("game", o.game)->required();
  auto* existence = compile->add_flag("--existence", o.existence, "Sentence true iff an equilibrium exists");
  auto* verify_opt = compile->add_option("--verify", o.verify_profile, "Query: can --player improve on PROFILE");
  auto* player_opt = compile->add_option("--player", o.player, "Deviating player");
  compile->add_option("--solver", o.solver, "Solver command ({file} is the script path), or 'auto'");
  compile->add_option("-o,--output", o.output, "Write the script to a file");
  existence->excludes(verify_opt);
  verify_opt->needs(player_opt);
  player_opt->needs(verify_opt);

  auto* taut = app.add_subcommand("taut", "Tautology check");
  taut->add_option("formula", o.formula)->required();
  taut->add_option("--k", o.k, "Truth values L_k")->check(CLI::PositiveNumber);
  taut->add_option("--atoms", o.atoms, "Treat the formula as a goal formula over E[..] of these names");
  taut->add_option("--grid", o.grid, "Sample denominator bound for goal formulas")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (*compile && !o.existence && o.verify_profile.empty()) {
    err << "error: compile needs --existence or --verify PROFILE --player P\n";
    return kExitUsage;
  }
  if (*taut && !o.atoms.empty() && taut->count("--grid") == 0) o.grid = 12;

  EnumerationLimits limits = o.unlimited ? EnumerationLimits::unlimited() : EnumerationLimits{};
  if (o.cap && !o.unlimited) limits = {*o.cap, *o.cap, *o.cap, *o.cap};

  try {
    if (*check) return cmd_check(o, out, err);
    if (*eval) return cmd_eval(o, out, err);
    if (*expect) return cmd_expect(o, limits, out, err);
    if (*goals) return cmd_goals(o, limits, out, err);
    if (*verify) return cmd_verify(o, limits, out, err);
    if (*dynamics) return cmd_dynamics(o, limits, out, err);
    if (*search) return cmd_search(o, limits, out, err);
    if (*compile) return cmd_compile(o, limits, out, err);
    if (*taut) return cmd_taut(o, limits, out, err);
  } catch (const Abort& a) {
    return a.code;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (raise it with --cap N or --unlimited)\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace expgame
