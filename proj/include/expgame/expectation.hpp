#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "expgame/game.hpp"
#include "expgame/limits.hpp"

namespace expgame {

// A probability distribution over one player's pure strategies, keyed by
// strategy index (see strategy_at). Unlisted strategies have probability 0.
struct MixedStrategy {
  std::size_t owner = 0;
  std::map<std::uint64_t, Rational> probs;

  static MixedStrategy point_mass(std::size_t owner, std::uint64_t index);
  static MixedStrategy uniform(std::size_t owner, std::uint64_t count);

  Rational prob(std::uint64_t index) const;
  Rational total() const;
  bool is_point_mass() const;
  // Copy without zero entries.
  MixedStrategy normalized() const;

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;
  friend auto operator<=>(const MixedStrategy&, const MixedStrategy&) = default;
};

// One mixed strategy per player, in player order. Together with the game
// this is a model <S, e, {pi_i}>.
struct Profile {
  std::vector<MixedStrategy> strategies;

  const MixedStrategy& operator[](std::size_t i) const { return strategies.at(i); }
  std::size_t size() const { return strategies.size(); }
  Profile with(std::size_t player, MixedStrategy s) const;

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

// Every player plays their first strategy (all variables 0).
Profile all_zero_profile(const Game& g);

std::vector<std::string> validate_profile(const Game& g, const Profile& p);

// Sum over strategy combinations of (product of probabilities) times the
// payoff of `player`. Only combinations inside the support are visited; the
// support product is checked against limits.max_combinations.
Rational expected_payoff(const Game& g, std::size_t player, const Profile& p,
                         const EnumerationLimits& limits = {});

// E[phi_j] for every player j, computed in one pass.
std::vector<Rational> expected_payoffs(const Game& g, const Profile& p, const EnumerationLimits& limits = {});

// ||Phi_i|| in the model given by p.
Rational eval_goal(const Game& g, std::size_t player, const Profile& p, const EnumerationLimits& limits = {});
std::vector<Rational> eval_goals(const Game& g, const Profile& p, const EnumerationLimits& limits = {});

}  // namespace expgame
