// Acceptance suite: one PASS/FAIL/SKIP line per criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>
#include <string>

#include "expgame/cli.hpp"
#include "expgame/game_file.hpp"
#include "expgame/rcf.hpp"
#include "expgame/report.hpp"
#include "expgame/solver.hpp"
#include "expgame/tautology.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace expgame;
using fixtures::pm;

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Result {
  Outcome outcome = Outcome::Pass;
  std::string detail;
};

// Collects failures; the first few are kept for the report.
class Checker {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  std::uint64_t checks() const { return checks_; }
  Result result(const std::string& summary) const {
    if (failures_ == 0) return {Outcome::Pass, summary};
    return {Outcome::Fail, std::to_string(failures_) + " of " + std::to_string(checks_) + " checks failed: " + notes_};
  }

 private:
  std::uint64_t checks_ = 0;
  std::uint64_t failures_ = 0;
  std::string notes_;
};

// Witnesses emitted anywhere in the suite, re-checked by criterion 6.
struct EmittedWitness {
  Game game;
  Profile profile;
  DeviationWitness witness;
};
std::vector<EmittedWitness> g_witnesses;

void record(const Game& g, const Profile& p, const Verdict& v) {
  if (const auto* n = std::get_if<NotEquilibrium>(&v)) g_witnesses.push_back({g, p, n->witness});
}
void record(const Game& g, const Profile& p, const VerificationReport& r) {
  for (const auto& v : r.players) record(g, p, v);
}

std::string str(const Rational& r) { return r.str(); }

// 1 ---------------------------------------------------------------------------
Result connective_semantics() {
  Checker c;
  const auto p = Formula::var("p");
  const auto q = Formula::var("q");
  const Connective binary[] = {Connective::Implies, Connective::StrongAnd, Connective::StrongOr,
                               Connective::Ominus,  Connective::MinAnd,    Connective::MaxOr,
                               Connective::Iff,     Connective::Distance};
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const LkScale scale(k);
    for (std::uint32_t i = 0; i <= k; ++i) {
      for (std::uint32_t j = 0; j <= k; ++j) {
        const Rational a = scale.value(i);
        const Rational b = scale.value(j);
        const Valuation v{{"p", a}, {"q", b}};
        for (Connective op : binary) {
          c.check(eval_formula(Formula::node(op, {p, q}), v, scale) == oracle::apply(op, a, b),
                  std::string(connective_name(op)) + " at " + str(a) + "," + str(b));
        }
        c.check(eval_formula(Formula::neg(p), v, scale) == oracle::apply(Connective::Neg, a), "neg");
      }
    }
  }
  return c.result(std::to_string(c.checks()) + " cases, k=1..3");
}

// 2 ---------------------------------------------------------------------------
Result axiom_suite() {
  Checker c;
  const auto p = Formula::var("p");
  const auto q = Formula::var("q");
  const auto r = Formula::var("r");
  const auto imp = [](const Formula& a, const Formula& b) { return Formula::implies(a, b); };
  const auto neg = [](const Formula& a) { return Formula::neg(a); };
  const std::vector<std::pair<std::string, Formula>> axioms{
      {"L1", imp(p, imp(q, p))},
      {"L2", imp(imp(p, q), imp(imp(q, r), imp(p, r)))},
      {"L3", imp(imp(neg(p), neg(q)), imp(q, p))},
      {"L4", imp(imp(imp(p, q), q), imp(imp(q, p), p))},
  };
  for (std::uint32_t k = 1; k <= 3; ++k) {
    for (const auto& [name, f] : axioms) c.check(is_tautology(f, LkScale(k)), name + " k=" + std::to_string(k));
  }
  using M = ModalFormula;
  c.check(eval_modal_closed(M::iff(M::half(), M::neg(M::half())), {}) == 1, "LP4");
  const auto a = M::atom(0);
  const auto b = M::atom(1);
  const auto d = M::atom(2);
  const auto lp1 = M::iff(M::ominus(M::product(a, b), M::product(a, d)), M::product(a, M::ominus(b, d)));
  const auto sampled = check_goal_on_grid(lp1, 3, 12);
  c.check(sampled.holds_on_sample, "LP1");
  return c.result("L1-L4 for k=1..3, LP4, LP1 on " + std::to_string(sampled.points_checked) + " triples");
}

// 3 ---------------------------------------------------------------------------
Result expectation_oracle() {
  Checker c;
  gen::Gen rng(3003);
  int games = 0;
  for (; games < 120; ++games) {
    const Game g = rng.game({.max_players = 3, .max_k = 2, .max_vars = 4});
    const Profile p = rng.profile(g);
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      c.check(expected_payoff(g, i, p) == oracle::expected_payoff(g, i, p), "oracle game " + std::to_string(games));
    }
    const std::size_t who = rng.uniform(0, g.player_count() - 1);
    const MixedStrategy other = rng.mixed(g, who, 7);
    const Rational lambda = rng.unit(11);
    MixedStrategy mix{who, {}};
    for (const auto& [s, pr] : p[who].probs) mix.probs[s] = mix.prob(s) + lambda * pr;
    for (const auto& [s, pr] : other.probs) mix.probs[s] = mix.prob(s) + (Rational(1) - lambda) * pr;
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      c.check(expected_payoff(g, i, p.with(who, mix)) ==
                  lambda * expected_payoff(g, i, p) + (Rational(1) - lambda) * expected_payoff(g, i, p.with(who, other)),
              "multilinearity game " + std::to_string(games));
    }
  }
  return c.result(std::to_string(games) + " random games, n<=3, k<=2, m<=4");
}

// 4 ---------------------------------------------------------------------------
std::vector<Game> atomic_games() {
  gen::Gen rng(4004);
  std::vector<Game> out;
  for (int n = 0; n < 20; ++n) {
    Game g = fixtures::example1();
    g.payoffs = {rng.formula(g.variables, 1, 3), rng.formula(g.variables, 1, 3)};
    out.push_back(g);
  }
  return out;
}

Result example1_reproduction() {
  Checker c;
  int n = 0;
  for (const Game& g : atomic_games()) {
    const auto r = search_equilibrium(g, 4);
    const std::string tag = "game " + std::to_string(n++);
    c.check(r.certified.has_value(), tag + ": nothing certified");
    if (!r.certified) continue;
    const auto v = verify_equilibrium(g, *r.certified, 4);
    record(g, *r.certified, v);
    const auto* e = std::get_if<Equilibrium>(&v.overall);
    c.check(e && e->certificate == Equilibrium::Certificate::Exact, tag + ": not certified on re-verification");
  }
  return c.result("20 random atomic-goal games, grid 1/4");
}

// 5 ---------------------------------------------------------------------------
Result example2_reproduction() {
  Checker c;
  const Game g = fixtures::example2();
  // Every pair of distributions with denominators up to 4; this contains
  // the 25 profiles of the 1/4 grid.
  std::set<MixedStrategy> first;
  std::set<MixedStrategy> second;
  for (std::uint32_t D = 1; D <= 4; ++D) {
    for (const auto& a : oracle::grid_strategies(g, 0, D)) first.insert(a);
    for (const auto& b : oracle::grid_strategies(g, 1, D)) second.insert(b);
  }
  std::set<Profile> profiles;
  for (const auto& a : first) {
    for (const auto& b : second) profiles.insert(fixtures::profile({a, b}));
  }
  for (const Profile& p : profiles) {
    const auto r = verify_equilibrium(g, p, 4);
    record(g, p, r);
    const auto* ne = std::get_if<NotEquilibrium>(&r.overall);
    c.check(ne != nullptr, "no witness at a grid profile");
    if (ne) c.check(witness_reverifies(g, p, ne->witness), "witness does not re-verify");
  }
  int cycles = 0;
  for (std::uint64_t a = 0; a < 2; ++a) {
    for (std::uint64_t b = 0; b < 2; ++b) {
      const auto t = best_response_dynamics(g, fixtures::profile({pm(0, a), pm(1, b)}), 50, 1);
      const bool cycle = std::holds_alternative<Cycle>(t.status) && t.iterations <= 50;
      cycles += cycle;
      c.check(cycle, "no cycle from a pure start");
    }
  }
  return c.result(std::to_string(profiles.size()) + " profiles with denominators <= 4 refuted, " +
                  std::to_string(cycles) + "/4 pure starts cycle");
}

// 6 ---------------------------------------------------------------------------
Result witness_soundness() {
  // Add witnesses from random games, goals of every shape, and the game files.
  gen::Gen rng(6006);
  for (int n = 0; n < 150; ++n) {
    const Game g = rng.game({.max_vars = 3, .atomic_goals = n % 3 == 0});
    const Profile p = rng.profile(g, 4);
    record(g, p, verify_equilibrium(g, p, static_cast<std::uint32_t>(rng.uniform(1, 3))));
    const auto t = best_response_dynamics(g, p, 10, 1);
    for (std::size_t s = 0; s + 1 < t.steps.size(); ++s) {
      record(g, t.steps[s].profile, verify_equilibrium(g, t.steps[s].profile, 1));
    }
  }
  for (const char* name : {"example1.exg", "example2.exg", "coordination.exg", "product.exg"}) {
    std::ifstream in(std::string(EXPGAME_GAMES_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto parsed = parse_game_file(ss.str());
    if (!parsed.ok()) return {Outcome::Fail, std::string("cannot load ") + name};
    const Game& g = *parsed.value;
    for (int n = 0; n < 20; ++n) {
      const Profile p = rng.profile(g, 3);
      record(g, p, verify_equilibrium(g, p, 2));
    }
  }

  Checker c;
  for (const auto& w : g_witnesses) {
    const bool strict = oracle::goal_value(w.game, w.witness.player, w.profile.with(w.witness.player, w.witness.new_strategy)) >
                        oracle::goal_value(w.game, w.witness.player, w.profile);
    c.check(witness_reverifies(w.game, w.profile, w.witness) && strict, "witness failed to re-verify");
  }
  if (g_witnesses.empty()) return {Outcome::Fail, "no witnesses were emitted"};
  return c.result(std::to_string(g_witnesses.size()) + "/" + std::to_string(g_witnesses.size()) +
                  " witnesses re-verify with strict improvement");
}

// 7 ---------------------------------------------------------------------------
Result rcf_consistency() {
  const auto command = default_solver_command();
  if (!command) return {Outcome::Skip, "no SMT solver configured (set EXPGAME_SOLVER or put z3 on PATH)"};

  Checker c;
  const auto ask = [&](const rcf::SmtScript& s) { return run_solver(*command, s.str()).answer; };
  int queries = 0;
  std::vector<Game> games = atomic_games();
  games.push_back(fixtures::example1());
  games.push_back(fixtures::single());
  gen::Gen rng(7007);
  for (const Game& g : games) {
    std::vector<Profile> profiles;
    if (auto r = search_equilibrium(g, 2); r.certified) profiles.push_back(*r.certified);
    profiles.push_back(rng.profile(g, 3));
    profiles.push_back(all_zero_profile(g));
    for (const Profile& p : profiles) {
      const auto report = verify_equilibrium(g, p, 1);
      for (std::size_t i = 0; i < g.player_count(); ++i) {
        const Verdict& v = report.players[i];
        if (is_unknown(v)) continue;
        const SolverAnswer a = ask(rcf::compile_verification_query(g, p, i));
        ++queries;
        c.check(a == (is_equilibrium(v) ? SolverAnswer::Unsat : SolverAnswer::Sat),
                std::string("solver said ") + solver_answer_name(a) + " for a " + verdict_name(v) + " player");
      }
    }
  }
  const SolverAnswer e1 = ask(rcf::compile_existence_sentence(fixtures::example1()));
  const SolverAnswer e2 = ask(rcf::compile_existence_sentence(fixtures::example2()));
  c.check(e1 == SolverAnswer::Sat, std::string("Example 1 existence: ") + solver_answer_name(e1));
  c.check(e2 == SolverAnswer::Unsat, std::string("Example 2 existence: ") + solver_answer_name(e2));
  return c.result(std::to_string(queries) + " verification queries agree; existence: Example 1 " +
                  solver_answer_name(e1) + ", Example 2 " + solver_answer_name(e2));
}

// 8 ---------------------------------------------------------------------------
std::string run_process(const std::string& command) {
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  out += "<exit " + std::to_string(::pclose(pipe)) + ">";
  return out;
}

std::string run_in_process(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"expgame"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str() + err.str() + "<exit " + std::to_string(code) + ">";
}

Result determinism() {
  Checker c;
  const auto dir = std::filesystem::temp_directory_path() / "expgame-acceptance";
  std::filesystem::create_directories(dir);
  gen::Gen rng(8008);
  std::vector<std::string> files;
  for (const char* name : {"example1.exg", "example2.exg", "coordination.exg", "product.exg"}) {
    files.push_back(std::string(EXPGAME_GAMES_DIR) + "/" + name);
  }
  for (int n = 0; n < 10; ++n) {
    const auto path = dir / ("random" + std::to_string(n) + ".exg");
    std::ofstream(path) << format_game(rng.game({.max_vars = 3}));
    files.push_back(path.string());
  }
  int commands = 0;
  for (const auto& f : files) {
    const std::vector<std::vector<std::string>> runs{
        {"search", f, "--grid", "2"},
        {"dynamics", f, "--grid", "2", "--max-iters", "30"},
        {"compile", f, "--existence"},
    };
    for (const auto& args : runs) {
      ++commands;
      c.check(run_in_process(args) == run_in_process(args), "in-process rerun differs: " + args[0] + " " + f);
      std::string shell = EXPGAME_CLI_PATH;
      for (const auto& a : args) shell += " '" + a + "'";
      shell += " 2>&1";
      c.check(run_process(shell) == run_process(shell), "separate processes differ: " + args[0] + " " + f);
    }
  }
  std::filesystem::remove_all(dir);
  return c.result(std::to_string(commands) + " commands byte-identical in-process and across processes");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "connective semantics", 1, connective_semantics},
      {2, "axiom tautology suite", 10, axiom_suite},
      {3, "expectation oracle", 30, expectation_oracle},
      {4, "Example 1 reproduction", 60, example1_reproduction},
      {5, "Example 2 reproduction", 10, example2_reproduction},
      {6, "witness soundness", 60, witness_soundness},
      {7, "RCF consistency", 300, rcf_consistency},
      {8, "determinism", 120, determinism},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = cr.run();
    } catch (const std::exception& e) {
      r = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.outcome != Outcome::Skip && secs > cr.budget_seconds) {
      r = {Outcome::Fail, r.detail + "; took " + std::to_string(secs) + " s, budget " +
                              std::to_string(cr.budget_seconds) + " s"};
    }
    const char* tag = r.outcome == Outcome::Pass ? "PASS" : r.outcome == Outcome::Fail ? "FAIL" : "SKIP";
    std::printf("[%s] %d %s (%.2f s): %s\n", tag, cr.id, cr.name, secs, r.detail.c_str());
    std::fflush(stdout);
    failed += r.outcome == Outcome::Fail;
  }
  return failed == 0 ? 0 : 1;
}
