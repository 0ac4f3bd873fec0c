#include "expgame/report.hpp"

#include <sstream>

namespace expgame {

std::string format_mixed(const Game& g, const MixedStrategy& m) {
  std::string out;
  for (const auto& [s, q] : m.probs) {
    if (q.is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (q != Rational(1)) out += q.str();
    out += "[" + format_strategy(g, strategy_at(g, m.owner, s)) + "]";
  }
  return out.empty() ? "0" : out;
}

std::string format_profile_inline(const Game& g, const Profile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += "; ";
    out += g.players[i] + ": " + format_mixed(g, p[i]);
  }
  return out;
}

const char* verdict_name(const Verdict& v) {
  if (is_equilibrium(v)) return "equilibrium";
  if (is_refuted(v)) return "not-equilibrium";
  return "unknown";
}

std::string format_verdict_line(const Game& g, std::size_t player, const Verdict& v) {
  std::ostringstream os;
  os << g.players[player] << ": ";
  if (const auto* e = std::get_if<Equilibrium>(&v)) {
    os << "best response ("
       << (e->certificate == Equilibrium::Certificate::Exact ? "exact" : "solver-checked") << ")";
  } else if (const auto* n = std::get_if<NotEquilibrium>(&v)) {
    const auto& w = n->witness;
    os << "deviation " << format_mixed(g, w.new_strategy) << " raises goal " << w.old_value << " -> "
       << w.new_value << " (+" << w.improvement() << ")";
  } else {
    const auto& u = std::get<Unknown>(v);
    os << "no deviation on grid 1/" << u.grid_denominator << " (best gap " << u.max_observed_improvement
       << "); not certified";
  }
  return os.str();
}

std::string format_verification(const Game& g, const VerificationReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.players.size(); ++i) out += format_verdict_line(g, i, r.players[i]) + "\n";
  out += std::string("verdict: ") + verdict_name(r.overall) + "\n";
  return out;
}

std::string verification_summary(const Game& g, const VerificationReport& r) {
  std::ostringstream os;
  os << "verdict=" << verdict_name(r.overall) << '\n';
  if (const auto* n = std::get_if<NotEquilibrium>(&r.overall)) {
    os << "player=" << g.players[n->witness.player] << '\n'
       << "epsilon=" << n->witness.improvement() << '\n'
       << "witness=" << format_mixed(g, n->witness.new_strategy) << '\n';
  } else if (const auto* u = std::get_if<Unknown>(&r.overall)) {
    os << "player=\nepsilon=" << u->max_observed_improvement << "\nwitness=\n";
  } else {
    os << "player=\nepsilon=0\nwitness=\n";
  }
  return os.str();
}

std::string format_search(const Game& g, const SearchReport& r, std::uint32_t denominator) {
  std::ostringstream os;
  os << "examined " << r.profiles_examined << " profiles on grid 1/" << denominator << '\n';
  if (r.certified) {
    os << "equilibrium (exact): " << format_profile_inline(g, *r.certified) << '\n';
  } else {
    os << "no certified equilibrium\n"
       << "best candidate: " << format_profile_inline(g, r.best_candidate) << '\n'
       << "epsilon: " << r.epsilon << '\n';
  }
  return os.str();
}

std::string search_summary(const Game& g, const SearchReport& r) {
  std::ostringstream os;
  os << "verdict=" << (r.certified ? "equilibrium" : "unknown") << '\n'
     << "player=\n"
     << "epsilon=" << r.epsilon << '\n'
     << "witness=\n"
     << "profile=" << format_profile_inline(g, r.certified ? *r.certified : r.best_candidate) << '\n';
  return os.str();
}

std::string format_dynamics(const Game& g, const DynamicsTrace& t) {
  std::ostringstream os;
  for (std::size_t n = 0; n < t.steps.size(); ++n) {
    const auto& step = t.steps[n];
    os << "step " << n;
    if (step.updated_player) os << " (" << g.players[*step.updated_player] << " moves)";
    os << ": " << format_profile_inline(g, step.profile) << "  goals";
    for (const auto& v : step.goal_values) os << ' ' << v;
    os << '\n';
  }
  os << "status: ";
  if (std::holds_alternative<FixedPoint>(t.status)) {
    os << "fixed point";
  } else if (const auto* c = std::get_if<Cycle>(&t.status)) {
    os << "cycle of period " << c->period;
  } else {
    os << "iteration limit";
  }
  os << " after " << t.iterations << " turns\n";
  return os.str();
}

}  // namespace expgame
