#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expgame/limits.hpp"
#include "expgame/logic.hpp"

namespace expgame {

// A Lukasiewicz game on L_k with constants, extended by one goal formula per
// player (an expectation game). Players and variables are kept in
// declaration order; that order fixes every index used elsewhere.
struct Game {
  LkScale scale{1};
  std::vector<std::string> players;
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> controls;  // V_i, per player
  std::vector<Formula> payoffs;                    // phi_i
  std::vector<ModalFormula> goals;                 // Phi_i

  std::size_t player_count() const { return players.size(); }
  std::optional<std::size_t> player_index(std::string_view name) const;
  std::optional<std::size_t> owner_of(std::string_view variable) const;
};

struct Violation {
  enum class Section : std::uint8_t { Game, Player, Payoff, Goal };

  Section section = Section::Game;
  std::optional<std::size_t> player;
  std::string message;
};

// Every violated structural invariant; empty iff the game is well formed.
std::vector<Violation> validate_game(const Game& g);

// <n, m, delta> with delta[i] = |V_i|.
struct GameType {
  std::size_t players = 0;
  std::size_t variables = 0;
  std::vector<std::size_t> delta;

  friend bool operator==(const GameType&, const GameType&) = default;
};

GameType game_type(const Game& g);

// Same class: equal n and m, and delta equal up to a permutation of players.
bool same_class(const GameType& a, const GameType& b);

// A pure strategy: values for the owner's variables, aligned with
// controls[owner].
struct Strategy {
  std::size_t owner = 0;
  std::vector<Rational> values;

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

using StrategyCombination = std::vector<Strategy>;

// (k+1)^{m_i}, saturating.
std::uint64_t strategy_count(const Game& g, std::size_t player);

// Strategies are ordered lexicographically: first controlled variable most
// significant, values ascending from 0 to 1.
Strategy strategy_at(const Game& g, std::size_t player, std::uint64_t index);
std::uint64_t strategy_index(const Game& g, const Strategy& s);
std::vector<Strategy> enumerate_strategies(const Game& g, std::size_t player,
                                           const EnumerationLimits& limits = {});

Valuation induced_valuation(const Game& g, const StrategyCombination& s);
Rational payoff(const Game& g, std::size_t player, const StrategyCombination& s);

// "p1=1/2,p2=0"
std::string format_strategy(const Game& g, const Strategy& s);

}  // namespace expgame
