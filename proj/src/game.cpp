#include "expgame/game.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace expgame {

std::optional<std::size_t> Game::player_index(std::string_view name) const {
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (players[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Game::owner_of(std::string_view variable) const {
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (std::find(controls[i].begin(), controls[i].end(), variable) != controls[i].end()) return i;
  }
  return std::nullopt;
}

std::vector<Violation> validate_game(const Game& g) {
  using S = Violation::Section;
  std::vector<Violation> out;
  auto report = [&](S section, std::optional<std::size_t> player, std::string msg) {
    out.push_back({section, player, std::move(msg)});
  };

  const std::size_t n = g.players.size();
  if (n == 0) report(S::Game, std::nullopt, "no players");

  std::set<std::string> seen_players;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen_players.insert(g.players[i]).second) report(S::Player, i, "duplicate player " + g.players[i]);
  }

  std::set<std::string> declared;
  for (const auto& v : g.variables) {
    if (!declared.insert(v).second) report(S::Game, std::nullopt, "duplicate variable " + v);
  }

  if (g.controls.size() != n) {
    report(S::Game, std::nullopt, "control sets given for " + std::to_string(g.controls.size()) + " of " +
                                      std::to_string(n) + " players");
  }
  std::map<std::string, std::size_t> controller;
  for (std::size_t i = 0; i < std::min(n, g.controls.size()); ++i) {
    if (g.controls[i].empty()) report(S::Player, i, "empty control set " + g.players[i]);
    for (const auto& v : g.controls[i]) {
      if (!declared.contains(v)) report(S::Player, i, "unknown variable " + v);
      auto [it, fresh] = controller.emplace(v, i);
      if (!fresh) {
        report(S::Player, i, "variable " + v + " controlled by both " + g.players[it->second] + " and " +
                                 g.players[i]);
      }
    }
  }
  for (const auto& v : g.variables) {
    if (!controller.contains(v)) report(S::Game, std::nullopt, "variable " + v + " controlled by no player");
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (i >= g.payoffs.size() || !g.payoffs[i]) {
      report(S::Payoff, i, "missing payoff for " + g.players[i]);
      continue;
    }
    for (const auto& v : variables_of(g.payoffs[i])) {
      if (!declared.contains(v)) report(S::Payoff, i, "unknown variable " + v);
    }
    for (const auto& c : constants_outside(g.payoffs[i], g.scale)) {
      report(S::Payoff, i, "constant " + c.str() + " outside L_" + std::to_string(g.scale.k()));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (i >= g.goals.size() || !g.goals[i]) {
      report(S::Goal, i, "missing goal for " + g.players[i]);
      continue;
    }
    for (std::size_t a : atoms_of(g.goals[i])) {
      if (a >= n) report(S::Goal, i, "expectation atom refers to unknown player #" + std::to_string(a + 1));
    }
  }
  return out;
}

GameType game_type(const Game& g) {
  GameType t;
  t.players = g.players.size();
  t.variables = g.variables.size();
  for (const auto& c : g.controls) t.delta.push_back(c.size());
  return t;
}

bool same_class(const GameType& a, const GameType& b) {
  if (a.players != b.players || a.variables != b.variables) return false;
  auto da = a.delta;
  auto db = b.delta;
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  return da == db;
}

std::uint64_t strategy_count(const Game& g, std::size_t player) {
  return saturating_pow(g.scale.size(), g.controls.at(player).size());
}

Strategy strategy_at(const Game& g, std::size_t player, std::uint64_t index) {
  const std::uint64_t count = strategy_count(g, player);
  if (index >= count) throw std::out_of_range("strategy index out of range");
  const std::size_t m = g.controls[player].size();
  Strategy s{player, std::vector<Rational>(m)};
  for (std::size_t pos = m; pos-- > 0;) {
    s.values[pos] = g.scale.value(static_cast<std::uint32_t>(index % g.scale.size()));
    index /= g.scale.size();
  }
  return s;
}

std::uint64_t strategy_index(const Game& g, const Strategy& s) {
  if (s.values.size() != g.controls.at(s.owner).size()) {
    throw std::invalid_argument("strategy does not cover the owner's variables");
  }
  std::uint64_t index = 0;
  for (const auto& v : s.values) {
    const auto level = g.scale.level_of(v);
    if (!level) throw std::invalid_argument("strategy value " + v.str() + " outside L_k");
    index = index * g.scale.size() + *level;
  }
  return index;
}

std::vector<Strategy> enumerate_strategies(const Game& g, std::size_t player, const EnumerationLimits& limits) {
  const std::uint64_t count = strategy_count(g, player);
  if (count > limits.max_player_strategies) {
    throw CapExceeded("strategies of " + g.players.at(player), count, limits.max_player_strategies);
  }
  std::vector<Strategy> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(strategy_at(g, player, i));
  return out;
}

Valuation induced_valuation(const Game& g, const StrategyCombination& s) {
  if (s.size() != g.players.size()) throw std::invalid_argument("strategy combination has wrong length");
  Valuation v;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].owner != i || s[i].values.size() != g.controls[i].size()) {
      throw std::invalid_argument("malformed strategy for " + g.players[i]);
    }
    for (std::size_t j = 0; j < s[i].values.size(); ++j) v[g.controls[i][j]] = s[i].values[j];
  }
  return v;
}

Rational payoff(const Game& g, std::size_t player, const StrategyCombination& s) {
  return eval_formula(g.payoffs.at(player), induced_valuation(g, s), g.scale);
}

std::string format_strategy(const Game& g, const Strategy& s) {
  std::string out;
  for (std::size_t j = 0; j < s.values.size(); ++j) {
    if (j) out += ',';
    out += g.controls.at(s.owner).at(j) + "=" + s.values[j].str();
  }
  return out;
}

}  // namespace expgame
